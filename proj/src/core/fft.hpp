#pragma once

#include <complex>
#include <vector>

namespace wsmf::detail {

// In-place forward DFT (sign -1, unnormalized).
void forward_dft(std::vector<std::complex<double>>& data);

}  // namespace wsmf::detail
