#include "constellations.hpp"

#include <cmath>

namespace dstbc {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::uint32_t gray(std::uint32_t n) { return n ^ (n >> 1); }

bool is_power_of_two(unsigned m) { return m != 0 && (m & (m - 1)) == 0; }

unsigned log2u(unsigned m) {
    unsigned b = 0;
    while ((1u << b) < m) ++b;
    return b;
}

}  // namespace

Constellation qam(unsigned m) {
    if (!is_power_of_two(m) || m < 4)
        throw ValidationError("qam: order must be a power of two >= 4");
    const unsigned bits = log2u(m);
    if (bits % 2 != 0) throw ValidationError("qam: order must be a perfect-square power of two");
    const unsigned side = 1u << (bits / 2);
    // unit average energy: mean level^2 per axis is (side^2 - 1) / 3
    const double scale = 1.0 / std::sqrt(2.0 * (side * side - 1) / 3.0);
    Constellation c;
    c.name = "qam" + std::to_string(m);
    c.bits_per_symbol = bits;
    for (unsigned a = 0; a < side; ++a)
        for (unsigned b = 0; b < side; ++b) {
            const double re = (2.0 * a - side + 1.0) * scale;
            const double im = (2.0 * b - side + 1.0) * scale;
            c.points.push_back({re, im});
            c.labels.push_back((gray(a) << (bits / 2)) | gray(b));
        }
    return c;
}

Constellation psk(unsigned m) {
    if (!is_power_of_two(m) || m < 2)
        throw ValidationError("psk: order must be a power of two >= 2");
    Constellation c;
    c.name = "psk" + std::to_string(m);
    c.bits_per_symbol = log2u(m);
    const double offset = (m == 4) ? kPi / 4.0 : 0.0;  // QPSK at odd multiples of 45 deg
    for (unsigned k = 0; k < m; ++k) {
        const double a = offset + 2.0 * kPi * k / m;
        c.points.push_back({std::cos(a), std::sin(a)});
        c.labels.push_back(gray(k));
    }
    return c;
}

Constellation rotate(const Constellation& c, double theta_deg) {
    Constellation out = c;
    out.rotation_deg = c.rotation_deg + theta_deg;
    const double t = theta_deg * kPi / 180.0;
    const cplx w{std::cos(t), std::sin(t)};
    for (auto& p : out.points) p *= w;
    if (theta_deg != 0.0) {
        // keep the base name, track rotation in the display name
        std::string base = c.name.substr(0, c.name.find('@'));
        out.name = base + "@" + std::to_string(out.rotation_deg);
    }
    return out;
}

double cpd(const Constellation& c) {
    if (c.points.size() < 2) throw ValidationError("cpd: need at least two points");
    double best = -1.0;
    for (std::size_t i = 0; i < c.points.size(); ++i)
        for (std::size_t j = i + 1; j < c.points.size(); ++j) {
            const double di = std::abs(c.points[i].real() - c.points[j].real());
            const double dq = std::abs(c.points[i].imag() - c.points[j].imag());
            const double v = di * dq;
            if (best < 0.0 || v < best) best = v;
        }
    return best;
}

Constellation parse_constellation(const std::string& spec) {
    std::string base = spec;
    double deg = 0.0;
    if (auto pos = spec.find('@'); pos != std::string::npos) {
        base = spec.substr(0, pos);
        try {
            deg = std::stod(spec.substr(pos + 1));
        } catch (...) {
            throw ValidationError("constellation: bad rotation in '" + spec + "'");
        }
    }
    unsigned order = 0;
    std::string kind;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(base[i]))) {
            kind = base.substr(0, i);
            try {
                order = static_cast<unsigned>(std::stoul(base.substr(i)));
            } catch (...) {
                order = 0;
            }
            break;
        }
    }
    Constellation c;
    if (kind == "qam")
        c = qam(order);
    else if (kind == "psk")
        c = psk(order);
    else
        throw ValidationError("constellation: unknown spec '" + spec + "' (use qamM or pskM[@deg])");
    if (deg != 0.0) c = rotate(c, deg);
    return c;
}

}  // namespace dstbc
