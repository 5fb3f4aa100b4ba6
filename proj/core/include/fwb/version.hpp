#pragma once

namespace fwb {

inline constexpr const char* kVersion = "fwbesov 0.1.0";

}  // namespace fwb
