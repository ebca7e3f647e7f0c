#include "hkepler/cli/logging.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace hkepler::cli {

void init_logging() {
    auto logger = spdlog::stderr_color_mt("hkepler");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("HK_LOG");
    const std::string level = env ? env : "info";
    if (level == "off") {
        spdlog::set_level(spdlog::level::off);
    } else if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else {
        spdlog::set_level(spdlog::level::info);
        if (level != "info") spdlog::warn("HK_LOG='{}' not recognised (off|info|debug); using info", level);
    }
}

}  // namespace hkepler::cli
