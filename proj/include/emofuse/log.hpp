#pragma once

namespace emofuse {

// Sets the spdlog level from EMOFUSE_LOG (error, warn, info, debug).
// Unset or unrecognized values leave the level at warn.
void init_logging_from_env();

}  // namespace emofuse
