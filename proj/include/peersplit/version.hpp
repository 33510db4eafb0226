#pragma once

namespace peersplit {

inline constexpr const char* kVersion = "peersplit 1.0.0";

}
