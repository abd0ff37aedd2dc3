#include "designs.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace dstbc {
namespace {

using json = nlohmann::json;

constexpr cplx kJ{0.0, 1.0};

// Internal builder: a T2 x N grid of coefficient rows over 2K real coordinates.
SymbolicGrid make_grid(std::size_t rows, std::size_t cols, std::size_t ncoeff) {
    SymbolicGrid g;
    g.rows = rows;
    g.cols = cols;
    g.entries.assign(rows * cols, SymbolicEntry{std::vector<cplx>(ncoeff, cplx{})});
    return g;
}

SymbolicEntry& at(SymbolicGrid& g, std::size_t r, std::size_t c) { return g.entries[r * g.cols + c]; }

// x_k as a coefficient row (k is 1-based)
SymbolicEntry sym(std::size_t K, std::size_t k, cplx scale = 1.0) {
    SymbolicEntry e{std::vector<cplx>(2 * K, cplx{})};
    e.coeffs[2 * (k - 1)] = scale;
    e.coeffs[2 * (k - 1) + 1] = scale * kJ;
    return e;
}

// x_k^*
SymbolicEntry sym_conj(std::size_t K, std::size_t k, cplx scale = 1.0) {
    SymbolicEntry e{std::vector<cplx>(2 * K, cplx{})};
    e.coeffs[2 * (k - 1)] = scale;
    e.coeffs[2 * (k - 1) + 1] = -scale * kJ;
    return e;
}

// x_kI + j x_qQ with independent I and Q sources (coordinate interleaved symbol)
SymbolicEntry tilde(std::size_t K, std::size_t i, std::size_t q, bool conj) {
    SymbolicEntry e{std::vector<cplx>(2 * K, cplx{})};
    e.coeffs[2 * (i - 1)] = 1.0;
    e.coeffs[2 * (q - 1) + 1] = conj ? -kJ : kJ;
    return e;
}

SymbolicEntry negate(SymbolicEntry e) {
    for (auto& c : e.coeffs) c = -c;
    return e;
}

Design design_from_grid(std::string name, std::size_t K, const SymbolicGrid& g) {
    Design d;
    d.name = std::move(name);
    d.n_relays = g.cols;
    d.n_symbols = K;
    d.rows = g.rows;
    d.relay_matrices.reserve(g.cols);
    for (std::size_t j = 0; j < g.cols; ++j) {
        ComplexMatrix a(g.rows, 2 * K);
        for (std::size_t t = 0; t < g.rows; ++t)
            for (std::size_t c = 0; c < 2 * K; ++c) a(t, c) = g.at(t, j).coeffs[c];
        d.relay_matrices.push_back(std::move(a));
    }
    validate_design(d);
    return d;
}

SymbolicGrid grid_hermitian(const SymbolicGrid& g) {
    SymbolicGrid h = make_grid(g.cols, g.rows, g.entries.front().coeffs.size());
    for (std::size_t r = 0; r < g.rows; ++r)
        for (std::size_t c = 0; c < g.cols; ++c) {
            SymbolicEntry e = g.at(r, c);
            // coefficients multiply real coordinates, so conjugating the
            // entry just conjugates every coefficient
            for (auto& v : e.coeffs) v = std::conj(v);
            at(h, c, r) = std::move(e);
        }
    return h;
}

// --- CUW building blocks -------------------------------------------------

ComplexMatrix cm2(cplx a, cplx b, cplx c, cplx d) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

// sigma_x: [[x_I, j x_Q], [-j x_Q, x_I]]
SymbolicGrid sigma_sym(std::size_t K, std::size_t i) {
    SymbolicGrid g = make_grid(2, 2, 2 * K);
    at(g, 0, 0).coeffs[2 * (i - 1)] = 1.0;
    at(g, 1, 1).coeffs[2 * (i - 1)] = 1.0;
    at(g, 0, 1).coeffs[2 * (i - 1) + 1] = kJ;
    at(g, 1, 0).coeffs[2 * (i - 1) + 1] = -kJ;
    return g;
}

// rho_x: [[-j x_Q, x_I], [-x_I, -j x_Q]]
// (off-diagonal carries the plain in-phase coordinate; the j-scaled variant
// breaks the block-diagonal structure of every CUW code)
SymbolicGrid rho_sym(std::size_t K, std::size_t i) {
    SymbolicGrid g = make_grid(2, 2, 2 * K);
    at(g, 0, 0).coeffs[2 * (i - 1) + 1] = -kJ;
    at(g, 1, 1).coeffs[2 * (i - 1) + 1] = -kJ;
    at(g, 0, 1).coeffs[2 * (i - 1)] = 1.0;
    at(g, 1, 0).coeffs[2 * (i - 1)] = -1.0;
    return g;
}

SymbolicGrid kron_grid_const(const SymbolicGrid& g, const ComplexMatrix& cst) {
    const std::size_t L = g.entries.front().coeffs.size();
    SymbolicGrid out = make_grid(g.rows * cst.rows, g.cols * cst.cols, L);
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j) {
            const auto& src = g.at(i, j).coeffs;
            for (std::size_t r = 0; r < cst.rows; ++r)
                for (std::size_t c = 0; c < cst.cols; ++c) {
                    const cplx s = cst(r, c);
                    if (s == cplx{}) continue;
                    auto& dst = at(out, i * cst.rows + r, j * cst.cols + c).coeffs;
                    for (std::size_t l = 0; l < L; ++l) dst[l] += s * src[l];
                }
        }
    return out;
}

void grid_add(SymbolicGrid& a, const SymbolicGrid& b) {
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        for (std::size_t l = 0; l < a.entries[i].coeffs.size(); ++l)
            a.entries[i].coeffs[l] += b.entries[i].coeffs[l];
}

// --- Hurwitz-Radon family -------------------------------------------------

RealMatrix rm2(double a, double b, double c, double d) {
    RealMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const double s = a(i, j);
            if (s == 0.0) continue;
            for (std::size_t r = 0; r < b.rows; ++r)
                for (std::size_t c = 0; c < b.cols; ++c) out(i * b.rows + r, j * b.cols + c) = s * b(r, c);
        }
    return out;
}

const RealMatrix& mat_R2() {
    static const RealMatrix m = rm2(0, 1, -1, 0);
    return m;
}
const RealMatrix& mat_P2() {
    static const RealMatrix m = rm2(0, 1, 1, 0);
    return m;
}
const RealMatrix& mat_Q2() {
    static const RealMatrix m = rm2(1, 0, 0, -1);
    return m;
}

// quaternion-type 4x4 units (antisymmetric, orthogonal, pairwise anticommuting)
RealMatrix quat4(int which) {
    RealMatrix m(4, 4);
    switch (which) {
        case 0:  // (v1,v2,v3,v4) -> (v2,-v1,-v4,v3)
            m(0, 1) = 1; m(1, 0) = -1; m(2, 3) = -1; m(3, 2) = 1;
            break;
        case 1:  // -> (v3,v4,-v1,-v2)
            m(0, 2) = 1; m(1, 3) = 1; m(2, 0) = -1; m(3, 1) = -1;
            break;
        default:  // -> (v4,-v3,v2,-v1)
            m(0, 3) = 1; m(1, 2) = -1; m(2, 1) = 1; m(3, 0) = -1;
            break;
    }
    return m;
}

// signed-index multiplication table of the octonion-type order-8 family;
// column c of the 8-variable block is M_c * v with M_c[r, |e|-1] = sign(e)
constexpr int kOctTable[8][8] = {
    {+1, +2, +3, +4, +5, +6, +7, +8},
    {+2, -1, +4, -3, +6, -5, -8, +7},
    {+3, -4, -1, +2, -7, -8, +5, +6},
    {+4, +3, -2, -1, -8, +7, -6, +5},
    {+5, -6, +7, +8, -1, +2, -3, -4},
    {+6, +5, +8, -7, -2, -1, +4, -3},
    {+7, +8, -5, +6, +3, -4, -1, -2},
    {+8, -7, -6, -5, +4, +3, +2, -1},
};

RealMatrix oct_m(int c) {  // c in 1..8; oct_m(1) = I
    RealMatrix m(8, 8);
    for (int r = 0; r < 8; ++r) {
        const int e = kOctTable[r][c - 1];
        m(r, std::abs(e) - 1) = e > 0 ? 1.0 : -1.0;
    }
    return m;
}

// family on 2^delta excluding the identity; sizes follow the 8-fold
// periodicity rho(2^(4d+c)) - 1 = 8d + 2^c - 1
std::vector<RealMatrix> hr_generators(unsigned delta) {
    if (delta == 0) return {};
    if (delta == 1) return {mat_R2()};
    if (delta == 2) return {quat4(0), quat4(1), quat4(2)};
    if (delta == 3) {
        std::vector<RealMatrix> f;
        for (int c = 2; c <= 8; ++c) f.push_back(oct_m(c));
        return f;
    }
    const std::size_t m = std::size_t{1} << (delta - 4);
    RealMatrix Im = RealMatrix::identity(m);
    RealMatrix I8 = RealMatrix::identity(8);
    std::vector<RealMatrix> fam;
    for (const auto& u : hr_generators(delta - 4)) fam.push_back(kron(mat_Q2(), kron(u, I8)));
    fam.push_back(kron(mat_R2(), kron(Im, I8)));
    for (int c = 2; c <= 8; ++c) fam.push_back(kron(mat_P2(), kron(Im, oct_m(c))));
    return fam;
}

std::size_t hr_family_size(unsigned delta) {
    const unsigned d = delta / 4, c = delta % 4;
    return 8u * d + (1u << c) - 1u;
}

// --- formatting ------------------------------------------------------------

bool ceq(cplx a, cplx b) { return a == b; }

std::string coeff_text(cplx c) {
    if (ceq(c, 1.0)) return "";
    if (ceq(c, -1.0)) return "-";
    if (ceq(c, kJ)) return "j ";
    if (ceq(c, -kJ)) return "-j ";
    char buf[64];
    if (c.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%g ", c.real());
    } else if (c.real() == 0.0) {
        std::snprintf(buf, sizeof buf, "%gj ", c.imag());
    } else {
        std::snprintf(buf, sizeof buf, "(%g%+gj) ", c.real(), c.imag());
    }
    return buf;
}

void append_term(std::string& out, const std::string& term) {
    if (out.empty()) {
        out = term;
    } else if (!term.empty() && term[0] == '-') {
        out += " - " + term.substr(1);
    } else {
        out += " + " + term;
    }
}

}  // namespace

std::string Design::rate_string() const {
    const std::size_t g = std::gcd(n_symbols, rows);
    const std::size_t num = n_symbols / g, den = rows / g;
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

void validate_design(const Design& d) {
    if (d.n_relays == 0) throw ValidationError("design: relay count must be >= 1");
    if (d.n_symbols == 0) throw ValidationError("design: symbol count must be >= 1");
    if (d.rows == 0) throw ValidationError("design: row count must be >= 1");
    if (d.n_symbols > d.rows) throw ValidationError("design: rate K/T2 exceeds 1");
    if (d.relay_matrices.size() != d.n_relays)
        throw ValidationError("design: relay matrix count does not match N");
    for (std::size_t j = 0; j < d.n_relays; ++j) {
        const auto& a = d.relay_matrices[j];
        if (a.rows != d.rows || a.cols != 2 * d.n_symbols)
            throw ValidationError("design: relay matrix " + std::to_string(j + 1) + " has wrong shape");
        if (!a.all_finite())
            throw ValidationError("design: relay matrix " + std::to_string(j + 1) + " has non-finite entries");
        bool nonzero = false;
        for (const auto& v : a.data)
            if (v != cplx{}) {
                nonzero = true;
                break;
            }
        if (!nonzero)
            throw ValidationError("design: relay matrix " + std::to_string(j + 1) + " is all zero");
    }
}

Design cod_square(unsigned a) {
    if (a == 0) throw ValidationError("cod_square: a must be >= 1");
    const std::size_t K = a + 1;
    // 2x2 base [[x1, x2], [-x2*, x1*]]; its relay-matrix pair is the Alamouti one
    SymbolicGrid g = make_grid(2, 2, 2 * K);
    at(g, 0, 0) = sym(K, 1);
    at(g, 0, 1) = sym(K, 2);
    at(g, 1, 0) = negate(sym_conj(K, 2));
    at(g, 1, 1) = sym_conj(K, 1);
    for (unsigned step = 2; step <= a; ++step) {
        const std::size_t n = g.rows;
        SymbolicGrid big = make_grid(2 * n, 2 * n, 2 * K);
        SymbolicGrid gh = grid_hermitian(g);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                at(big, r, c) = g.at(r, c);
                at(big, n + r, n + c) = gh.at(r, c);
            }
        for (std::size_t i = 0; i < n; ++i) {
            at(big, i, n + i) = negate(sym_conj(K, step + 1));
            at(big, n + i, i) = sym(K, step + 1);
        }
        g = std::move(big);
    }
    return design_from_grid("cod" + std::to_string(std::size_t{1} << a), K, g);
}

Design ciod(unsigned n) {
    if (n == 4) {
        const std::size_t K = 4;
        auto t = [&](std::size_t i) { return tilde(K, i, (i - 1 + 2) % 4 + 1, false); };
        auto tc = [&](std::size_t i) { return tilde(K, i, (i - 1 + 2) % 4 + 1, true); };
        SymbolicGrid g = make_grid(4, 4, 2 * K);
        at(g, 0, 0) = t(1);
        at(g, 0, 1) = t(2);
        at(g, 1, 0) = negate(tc(2));
        at(g, 1, 1) = tc(1);
        at(g, 2, 2) = t(3);
        at(g, 2, 3) = t(4);
        at(g, 3, 2) = negate(tc(4));
        at(g, 3, 3) = tc(3);
        return design_from_grid("ciod4", K, g);
    }
    if (n == 8) {
        const std::size_t K = 6;
        auto t = [&](std::size_t i) { return tilde(K, i, (i - 1 + 3) % 6 + 1, false); };
        auto tc = [&](std::size_t i) { return tilde(K, i, (i - 1 + 3) % 6 + 1, true); };
        SymbolicGrid g = make_grid(8, 8, 2 * K);
        // rate-3/4 orthogonal block [[a,b,c,0],[-b*,a*,0,c],[-c*,0,a*,-b],[0,-c*,b*,a]]
        auto fill = [&](std::size_t off, std::size_t s) {
            at(g, off + 0, off + 0) = t(s);
            at(g, off + 0, off + 1) = t(s + 1);
            at(g, off + 0, off + 2) = t(s + 2);
            at(g, off + 1, off + 0) = negate(tc(s + 1));
            at(g, off + 1, off + 1) = tc(s);
            at(g, off + 1, off + 3) = t(s + 2);
            at(g, off + 2, off + 0) = negate(tc(s + 2));
            at(g, off + 2, off + 2) = tc(s);
            at(g, off + 2, off + 3) = negate(t(s + 1));
            at(g, off + 3, off + 1) = negate(tc(s + 2));
            at(g, off + 3, off + 2) = tc(s + 1);
            at(g, off + 3, off + 3) = t(s);
        };
        fill(0, 1);
        fill(4, 4);
        return design_from_grid("ciod8", K, g);
    }
    throw ValidationError("ciod: only n = 4 and n = 8 are supported");
}

Design cuw(unsigned a) {
    if (a == 0) throw ValidationError("cuw: a must be >= 1");
    const std::size_t K = 2 * a;
    const ComplexMatrix I2c = [] {
        ComplexMatrix m(2, 2);
        m(0, 0) = m(1, 1) = 1.0;
        return m;
    }();
    const ComplexMatrix s1 = cm2(0, 1, -1, 0);
    const ComplexMatrix s2 = cm2(0, kJ, kJ, 0);
    const ComplexMatrix s3 = cm2(1, 0, 0, -1);
    auto kron_chain = [&](const SymbolicGrid& base, const std::vector<const ComplexMatrix*>& cs) {
        SymbolicGrid g = base;
        for (const auto* c : cs) g = kron_grid_const(g, *c);
        return g;
    };
    std::vector<const ComplexMatrix*> ident(a - 1, &I2c);
    SymbolicGrid g = kron_chain(sigma_sym(K, 1), ident);
    std::vector<const ComplexMatrix*> all_s3(a - 1, &s3);
    grid_add(g, kron_chain(rho_sym(K, 2 * a), all_s3));
    for (unsigned i = 1; i < a; ++i) {
        std::vector<const ComplexMatrix*> cs;
        for (unsigned k = 0; k < a - i - 1; ++k) cs.push_back(&I2c);
        cs.push_back(&s1);
        for (unsigned k = 0; k < i - 1; ++k) cs.push_back(&s3);
        grid_add(g, kron_chain(sigma_sym(K, 2 * i), cs));
        cs[a - i - 1] = &s2;
        grid_add(g, kron_chain(sigma_sym(K, 2 * i + 1), cs));
    }
    return design_from_grid("cuw" + std::to_string(std::size_t{1} << a), K, g);
}

Design rr8() {
    Design d = block_diagonal_compose(cuw(2), cuw(2));
    d.name = "rr8";
    return d;
}

Design rod(unsigned n) {
    if (n == 0) throw ValidationError("rod: relay count must be >= 1");
    unsigned delta = 0;
    while (1 + hr_family_size(delta) < n) ++delta;
    const std::size_t p = std::size_t{1} << delta;
    std::vector<RealMatrix> cols;
    cols.push_back(RealMatrix::identity(p));
    for (auto& gmat : hr_generators(delta)) {
        if (cols.size() == n) break;
        cols.push_back(std::move(gmat));
    }
    Design d;
    d.name = "rod" + std::to_string(n);
    d.n_relays = n;
    d.n_symbols = p;
    d.rows = p;
    for (unsigned j = 0; j < n; ++j) {
        ComplexMatrix a(p, 2 * p);
        for (std::size_t t = 0; t < p; ++t)
            for (std::size_t i = 0; i < p; ++i) {
                const double v = cols[j](t, i);
                if (v != 0.0) {
                    a(t, 2 * i) = v;
                    a(t, 2 * i + 1) = v * kJ;
                }
            }
        d.relay_matrices.push_back(std::move(a));
    }
    validate_design(d);
    return d;
}

Design stack_to_cod(const Design& d) {
    // a real design carries each symbol as +/- x_k with matching I/Q coefficients
    for (const auto& a : d.relay_matrices)
        for (std::size_t t = 0; t < a.rows; ++t)
            for (std::size_t k = 0; k < d.n_symbols; ++k) {
                const cplx ci = a(t, 2 * k), cq = a(t, 2 * k + 1);
                if (ci.imag() != 0.0 || cq != ci * kJ)
                    throw ValidationError("stack_to_cod: input is not a real design");
            }
    Design out;
    out.name = (d.name.rfind("rod", 0) == 0) ? "scod" + d.name.substr(3) : d.name + "_stacked";
    out.n_relays = d.n_relays;
    out.n_symbols = d.n_symbols;
    out.rows = 2 * d.rows;
    for (const auto& a : d.relay_matrices) {
        ComplexMatrix big(2 * d.rows, a.cols);
        for (std::size_t t = 0; t < d.rows; ++t)
            for (std::size_t c = 0; c < a.cols; ++c) {
                big(t, c) = a(t, c);
                big(d.rows + t, c) = std::conj(a(t, c));
            }
        out.relay_matrices.push_back(std::move(big));
    }
    validate_design(out);
    return out;
}

Design block_diagonal_compose(const Design& g1, const Design& g2) {
    if (g1.rows != g2.rows || g1.n_symbols != g2.n_symbols)
        throw ValidationError("block_diagonal_compose: designs must share (T2, K)");
    const std::size_t T = g1.rows, K = g1.n_symbols;
    Design out;
    out.name = g1.name + "+" + g2.name;
    out.n_relays = g1.n_relays + g2.n_relays;
    out.n_symbols = 2 * K;
    out.rows = 2 * T;
    for (const auto& a : g1.relay_matrices) {
        ComplexMatrix big(2 * T, 4 * K);
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t c = 0; c < 2 * K; ++c) big(t, c) = a(t, c);
        out.relay_matrices.push_back(std::move(big));
    }
    for (const auto& a : g2.relay_matrices) {
        ComplexMatrix big(2 * T, 4 * K);
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t c = 0; c < 2 * K; ++c) big(T + t, 2 * K + c) = a(t, c);
        out.relay_matrices.push_back(std::move(big));
    }
    validate_design(out);
    return out;
}

Design coordinate_interleave(const Design& d, std::span<const std::size_t> perm) {
    if (perm.size() != 2 * d.n_symbols)
        throw ValidationError("coordinate_interleave: permutation length must be 2K");
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t v : perm) {
        if (v >= perm.size() || seen[v])
            throw ValidationError("coordinate_interleave: not a permutation of 0..2K-1");
        seen[v] = true;
    }
    Design out = d;
    out.name = d.name + "~";
    for (auto& a : out.relay_matrices) {
        ComplexMatrix b(a.rows, a.cols);
        for (std::size_t t = 0; t < a.rows; ++t)
            for (std::size_t c = 0; c < a.cols; ++c) b(t, c) = a(t, perm[c]);
        a = std::move(b);
    }
    return out;
}

ComplexMatrix code_matrix(const Design& d, std::span<const double> x) {
    if (x.size() != 2 * d.n_symbols) throw ValidationError("code_matrix: x must have length 2K");
    ComplexMatrix c(d.rows, d.n_relays);
    for (std::size_t j = 0; j < d.n_relays; ++j) {
        auto col = matvec(d.relay_matrices[j], x);
        for (std::size_t t = 0; t < d.rows; ++t) c(t, j) = col[t];
    }
    return c;
}

std::size_t transmissions_per_symbol(const Design& d) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < d.n_symbols; ++k) {
        std::size_t cnt = 0;
        for (const auto& a : d.relay_matrices)
            for (std::size_t t = 0; t < a.rows; ++t)
                if (a(t, 2 * k) != cplx{} || a(t, 2 * k + 1) != cplx{}) ++cnt;
        best = std::max(best, cnt);
    }
    return best;
}

SymbolicGrid render_symbolic(const Design& d) {
    SymbolicGrid g = make_grid(d.rows, d.n_relays, 2 * d.n_symbols);
    for (std::size_t j = 0; j < d.n_relays; ++j)
        for (std::size_t t = 0; t < d.rows; ++t)
            for (std::size_t c = 0; c < 2 * d.n_symbols; ++c)
                at(g, t, j).coeffs[c] = d.relay_matrices[j](t, c);
    return g;
}

std::string format_entry(const SymbolicEntry& e) {
    const std::size_t K = e.coeffs.size() / 2;
    // terms ordered with real-coefficient parts before imaginary ones, then
    // by symbol index, I before Q; pure a*x_k / a*x_k* forms collapse first
    struct Term {
        int cls;  // 0 = real coefficient, 1 = imaginary/mixed
        std::size_t sym;
        int iq;  // 0 = I or whole symbol, 1 = Q
        std::string text;
    };
    std::vector<Term> terms;
    for (std::size_t k = 0; k < K; ++k) {
        const cplx ci = e.coeffs[2 * k], cq = e.coeffs[2 * k + 1];
        const std::string idx = std::to_string(k + 1);
        if (ci != cplx{} && ci.imag() == 0.0 && ceq(cq, ci * kJ)) {
            terms.push_back({0, k, 0, coeff_text(ci) + "x_" + idx});
            continue;
        }
        if (ci != cplx{} && ci.imag() == 0.0 && ceq(cq, -ci * kJ)) {
            terms.push_back({0, k, 0, coeff_text(ci) + "x_" + idx + "*"});
            continue;
        }
        if (ci != cplx{})
            terms.push_back({ci.imag() == 0.0 ? 0 : 1, k, 0, coeff_text(ci) + "x_" + idx + "I"});
        if (cq != cplx{})
            terms.push_back({cq.imag() == 0.0 ? 0 : 1, k, 1, coeff_text(cq) + "x_" + idx + "Q"});
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        if (a.cls != b.cls) return a.cls < b.cls;
        if (a.sym != b.sym) return a.sym < b.sym;
        return a.iq < b.iq;
    });
    std::string out;
    for (const auto& t : terms) append_term(out, t.text);
    return out.empty() ? "0" : out;
}

std::string render_text(const Design& d) {
    SymbolicGrid g = render_symbolic(d);
    std::vector<std::string> cells(g.entries.size());
    std::vector<std::size_t> width(g.cols, 0);
    for (std::size_t r = 0; r < g.rows; ++r)
        for (std::size_t c = 0; c < g.cols; ++c) {
            cells[r * g.cols + c] = format_entry(g.at(r, c));
            width[c] = std::max(width[c], cells[r * g.cols + c].size());
        }
    std::string out;
    for (std::size_t r = 0; r < g.rows; ++r) {
        out += "[ ";
        for (std::size_t c = 0; c < g.cols; ++c) {
            const std::string& s = cells[r * g.cols + c];
            out += s;
            out.append(width[c] - s.size(), ' ');
            out += (c + 1 < g.cols) ? "  " : " ";
        }
        out += "]\n";
    }
    return out;
}

std::string design_to_json(const Design& d) {
    json j;
    j["name"] = d.name;
    j["N"] = d.n_relays;
    j["K"] = d.n_symbols;
    j["T2"] = d.rows;
    json mats = json::array();
    for (const auto& a : d.relay_matrices) {
        json rows = json::array();
        for (std::size_t t = 0; t < a.rows; ++t) {
            json row = json::array();
            for (std::size_t c = 0; c < a.cols; ++c)
                row.push_back({a(t, c).real(), a(t, c).imag()});
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    j["relay_matrices"] = std::move(mats);
    return j.dump(2);
}

Design design_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("design json: parse error: ") + e.what());
    }
    Design d;
    try {
        d.name = j.at("name").get<std::string>();
        d.n_relays = j.at("N").get<std::size_t>();
        d.n_symbols = j.at("K").get<std::size_t>();
        d.rows = j.at("T2").get<std::size_t>();
        const auto& mats = j.at("relay_matrices");
        if (!mats.is_array() || mats.size() != d.n_relays)
            throw ValidationError("design json: relay_matrices must hold N matrices");
        for (std::size_t m = 0; m < mats.size(); ++m) {
            const auto& rows = mats[m];
            if (!rows.is_array() || rows.size() != d.rows)
                throw ValidationError("design json: matrix " + std::to_string(m + 1) +
                                      " must have T2 rows");
            ComplexMatrix a(d.rows, 2 * d.n_symbols);
            for (std::size_t t = 0; t < d.rows; ++t) {
                const auto& row = rows[t];
                if (!row.is_array() || row.size() != 2 * d.n_symbols)
                    throw ValidationError("design json: matrix " + std::to_string(m + 1) + " row " +
                                          std::to_string(t + 1) + " must have 2K entries");
                for (std::size_t c = 0; c < row.size(); ++c) {
                    const auto& pair = row[c];
                    if (!pair.is_array() || pair.size() != 2)
                        throw ValidationError("design json: entries must be [re, im] pairs");
                    a(t, c) = {pair[0].get<double>(), pair[1].get<double>()};
                }
            }
            d.relay_matrices.push_back(std::move(a));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("design json: ") + e.what());
    }
    validate_design(d);
    return d;
}

void save_design(const Design& d, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("save_design: cannot open " + path);
    f << design_to_json(d) << "\n";
    if (!f) throw ValidationError("save_design: write failed for " + path);
}

Design load_design(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("load_design: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return design_from_json(ss.str());
}

std::vector<std::string> builtin_names() {
    return {"cod2", "cod4", "cod8", "ciod4", "ciod8", "cuw2", "cuw4", "rr8", "rodN", "scodN"};
}

Design builtin_design(std::string_view spec) {
    const std::string s(spec);
    if (s == "cod2") return cod_square(1);
    if (s == "cod4") return cod_square(2);
    if (s == "cod8") return cod_square(3);
    if (s == "ciod4") return ciod(4);
    if (s == "ciod8") return ciod(8);
    if (s == "cuw2") return cuw(1);
    if (s == "cuw4") return cuw(2);
    if (s == "rr8") return rr8();
    auto parse_suffix = [&](std::string_view prefix) -> long {
        if (s.size() <= prefix.size() || s.rfind(prefix, 0) != 0) return -1;
        long v = 0;
        for (char c : s.substr(prefix.size())) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
            v = v * 10 + (c - '0');
            if (v > 64) return -1;  // delay grows fast; keep instantiations sane
        }
        return v;
    };
    if (long v = parse_suffix("rod"); v >= 1) return rod(static_cast<unsigned>(v));
    if (long v = parse_suffix("scod"); v >= 1) return stack_to_cod(rod(static_cast<unsigned>(v)));
    std::string msg = "unknown design '" + s + "'; builtins:";
    for (const auto& n : builtin_names()) msg += " " + n;
    throw ValidationError(msg);
}

Design resolve_design(const std::string& spec) {
    try {
        return builtin_design(spec);
    } catch (const ValidationError&) {
        if (std::filesystem::exists(spec)) return load_design(spec);
        throw;
    }
}

}  // namespace dstbc
