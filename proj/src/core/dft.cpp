#include <cmath>
#include <numbers>
#include <stdexcept>

#include "linalg.hpp"

namespace strmat {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx x = a[i + j];
                cplx y = a[i + j + len / 2] * w;
                a[i + j] = x + y;
                a[i + j + len / 2] = x - y;
                w *= wlen;
            }
        }
    }
}

}  // namespace

std::vector<cplx> dft(std::span<const cplx> v, int sign) {
    const std::size_t n = v.size();
    if (n == 0) throw std::invalid_argument("dft: empty input");
    if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +1 or -1");

    std::vector<cplx> out(v.begin(), v.end());
    if (is_pow2(n)) {
        fft_radix2(out, sign);
    } else {
        // direct evaluation fallback for general lengths
        std::vector<cplx> in(v.begin(), v.end());
        const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t p = 0; p < n; ++p) {
            cplx acc(0);
            for (std::size_t j = 0; j < n; ++j)
                acc += in[j] * std::polar(1.0, base * static_cast<double>((j * p) % n));
            out[p] = acc;
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& z : out) z *= scale;
    return out;
}

}  // namespace strmat
