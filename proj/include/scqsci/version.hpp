#pragma once

namespace scqsci {

inline constexpr const char *kVersion = "0.1.0";

} // namespace scqsci
