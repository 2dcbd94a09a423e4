#include "fenchel/sampling.hpp"

#include <array>
#include <cmath>
#include <random>

namespace fenchel {

namespace {

constexpr std::array<unsigned, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,  41,  43,  47,  53,
                                              59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::uint64_t index, unsigned base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

} // namespace

std::vector<Vector> sample_box(std::size_t dim, std::size_t count, std::uint64_t seed, double radius) {
    if (dim == 0 || dim > kPrimes.size()) {
        throw Error(ErrorCode::InvalidArgument, "sample_box supports 1..32 dimensions");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> shift(dim);
    for (double& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;

    std::vector<Vector> pts;
    pts.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Vector x(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            double u = radical_inverse(k + 1, kPrimes[d]) + shift[d];
            if (u >= 1.0) u -= 1.0;
            x[d] = radius * (2.0 * u - 1.0);
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

std::vector<Vector> sample_ball(std::size_t dim, std::size_t count, std::uint64_t seed, double radius) {
    auto pts = sample_box(dim, count, seed, 1.0);
    for (auto& x : pts) {
        const double n2 = x.norm();
        if (n2 > 0.0) x *= radius * x.max_abs() / n2;
    }
    return pts;
}

} // namespace fenchel
