#pragma once

namespace hkepler::cli {

/// Installs a stderr logger whose level comes from HK_LOG (off|info|debug).
void init_logging();

}  // namespace hkepler::cli
