#include "emofuse/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace emofuse {

void init_logging_from_env() {
  // Diagnostics go to stderr so stdout stays machine-readable.
  static bool installed = false;
  if (!installed) {
    auto logger = spdlog::stderr_color_mt("emofuse");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    installed = true;
  }

  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("EMOFUSE_LOG")) {
    const std::string_view value(env);
    if (value == "error") level = spdlog::level::err;
    else if (value == "warn") level = spdlog::level::warn;
    else if (value == "info") level = spdlog::level::info;
    else if (value == "debug") level = spdlog::level::debug;
  }
  spdlog::set_level(level);
}

}  // namespace emofuse
