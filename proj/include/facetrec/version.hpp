#pragma once

namespace facetrec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace facetrec
