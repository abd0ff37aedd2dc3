#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace dstbc {

/// A unit-average-energy signal set with Gray bit labels. labels[i] is the
/// bit pattern carried by points[i].
struct Constellation {
    std::string name;
    std::vector<cplx> points;
    unsigned bits_per_symbol = 0;
    std::vector<std::uint32_t> labels;
    double rotation_deg = 0.0;

    std::size_t size() const { return points.size(); }
};

/// Square QAM; m must be a power of 4 (4, 16, 64, ...). Per-axis Gray labels.
Constellation qam(unsigned m);

/// PSK with the ring Gray code. QPSK sits at odd multiples of 45 degrees;
/// other orders start at angle 0 (BPSK = {+1, -1}).
Constellation psk(unsigned m);

/// All points multiplied by e^{j theta}; energy and labels preserved.
Constellation rotate(const Constellation& c, double theta_deg);

/// Coordinate product distance: min over distinct pairs of |dI| * |dQ|.
double cpd(const Constellation& c);

/// Spec strings: "qam16", "psk8@10", "psk4@30" (name + optional @degrees).
Constellation parse_constellation(const std::string& spec);

}  // namespace dstbc
