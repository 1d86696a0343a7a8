#pragma once

namespace fvc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fvc
