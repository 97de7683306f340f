#pragma once

#include <cstdint>
#include <vector>

namespace textmark {

// One bit per element, each 0 or 1.
using BitVector = std::vector<std::uint8_t>;

}  // namespace textmark
