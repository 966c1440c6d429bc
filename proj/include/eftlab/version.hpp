#pragma once

namespace eftlab {

inline constexpr const char* kVersion = "0.1.0";

}
