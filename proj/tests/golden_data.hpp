// Frozen expected values for the golden-matrix tests. Entries are transcribed
// by hand into the canonical text format (terms with real coefficients first,
// then by symbol index, I before Q; pure-symbol forms collapsed).
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace golden {

using Grid = std::vector<std::vector<std::string>>;

inline Grid cod2() {
    return {
        {"x_1", "x_2"},
        {"-x_2*", "x_1*"},
    };
}

inline Grid cod4() {
    return {
        {"x_1", "x_2", "-x_3*", "0"},
        {"-x_2*", "x_1*", "0", "-x_3*"},
        {"x_3", "0", "x_1*", "-x_2"},
        {"0", "x_3", "x_2*", "x_1"},
    };
}

inline Grid cod8() {
    return {
        {"x_1", "x_2", "-x_3*", "0", "-x_4*", "0", "0", "0"},
        {"-x_2*", "x_1*", "0", "-x_3*", "0", "-x_4*", "0", "0"},
        {"x_3", "0", "x_1*", "-x_2", "0", "0", "-x_4*", "0"},
        {"0", "x_3", "x_2*", "x_1", "0", "0", "0", "-x_4*"},
        {"x_4", "0", "0", "0", "x_1*", "-x_2", "x_3*", "0"},
        {"0", "x_4", "0", "0", "x_2*", "x_1", "0", "x_3*"},
        {"0", "0", "x_4", "0", "-x_3", "0", "x_1", "x_2"},
        {"0", "0", "0", "x_4", "0", "-x_3", "-x_2*", "x_1*"},
    };
}

inline Grid ciod4() {
    return {
        {"x_1I + j x_3Q", "x_2I + j x_4Q", "0", "0"},
        {"-x_2I + j x_4Q", "x_1I - j x_3Q", "0", "0"},
        {"0", "0", "x_3I + j x_1Q", "x_4I + j x_2Q"},
        {"0", "0", "-x_4I + j x_2Q", "x_3I - j x_1Q"},
    };
}

// the lower-right 2x2 corner of each 4x4 block repairs the printed sign
// pattern so the columns stay orthogonal (see project notes)
inline Grid ciod8() {
    return {
        {"x_1I + j x_4Q", "x_2I + j x_5Q", "x_3I + j x_6Q", "0", "0", "0", "0", "0"},
        {"-x_2I + j x_5Q", "x_1I - j x_4Q", "0", "x_3I + j x_6Q", "0", "0", "0", "0"},
        {"-x_3I + j x_6Q", "0", "x_1I - j x_4Q", "-x_2I - j x_5Q", "0", "0", "0", "0"},
        {"0", "-x_3I + j x_6Q", "x_2I - j x_5Q", "x_1I + j x_4Q", "0", "0", "0", "0"},
        {"0", "0", "0", "0", "x_4I + j x_1Q", "x_5I + j x_2Q", "x_6I + j x_3Q", "0"},
        {"0", "0", "0", "0", "-x_5I + j x_2Q", "x_4I - j x_1Q", "0", "x_6I + j x_3Q"},
        {"0", "0", "0", "0", "-x_6I + j x_3Q", "0", "x_4I - j x_1Q", "-x_5I - j x_2Q"},
        {"0", "0", "0", "0", "0", "-x_6I + j x_3Q", "x_5I - j x_2Q", "x_4I + j x_1Q"},
    };
}

inline Grid cuw2() {
    return {
        {"x_1I - j x_2Q", "x_2I + j x_1Q"},
        {"-x_2I - j x_1Q", "x_1I - j x_2Q"},
    };
}

// tensor-product expansion (authoritative over the printed variant)
inline Grid cuw4() {
    return {
        {"x_1I - j x_4Q", "x_2I + j x_3I", "x_4I + j x_1Q", "-x_3Q + j x_2Q"},
        {"-x_2I + j x_3I", "x_1I + j x_4Q", "-x_3Q - j x_2Q", "-x_4I + j x_1Q"},
        {"-x_4I - j x_1Q", "x_3Q - j x_2Q", "x_1I - j x_4Q", "x_2I + j x_3I"},
        {"x_3Q + j x_2Q", "x_4I - j x_1Q", "-x_2I + j x_3I", "x_1I + j x_4Q"},
    };
}

// printed variant of the 4-antenna Clifford code; differs from the tensor
// expansion at (2,1), (4,2), (4,3)
inline Grid cuw4_printed() {
    Grid g = cuw4();
    g[1][0] = "-x_2I - j x_3I";
    g[3][1] = "x_4Q - j x_1Q";
    g[3][2] = "-x_2I - j x_3I";
    return g;
}

inline std::string shift_symbols(const std::string& entry, int shift) {
    std::string out;
    for (std::size_t i = 0; i < entry.size();) {
        if (entry.compare(i, 2, "x_") == 0) {
            std::size_t j = i + 2;
            int v = 0;
            while (j < entry.size() && std::isdigit(static_cast<unsigned char>(entry[j]))) {
                v = v * 10 + (entry[j] - '0');
                ++j;
            }
            out += "x_" + std::to_string(v + shift);
            i = j;
        } else {
            out += entry[i++];
        }
    }
    return out;
}

// block-diagonal pairing of two 4-antenna Clifford codes on disjoint symbols
inline Grid rr8() {
    Grid base = cuw4();
    Grid g(8, std::vector<std::string>(8, "0"));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            g[r][c] = base[r][c];
            g[4 + r][4 + c] = shift_symbols(base[r][c], 4);
        }
    return g;
}

inline Grid double_alamouti() {
    return {
        {"x_1", "x_2", "0", "0"},
        {"-x_2*", "x_1*", "0", "0"},
        {"0", "0", "x_3", "x_4"},
        {"0", "0", "-x_4*", "x_3*"},
    };
}

// --- real orthogonal designs ------------------------------------------------
// Signed-index tables for the 10- and 12-relay prints. A column entry e at
// (row r, group slot s) means sign(e) * x_{base(s) + |local|-1}. The order-8
// block multiplication table is shared by both prints; the two sign repairs
// (first column's lower half, first octonion column's lower half) keep the
// columns orthogonal and are recorded in the project notes.

inline const std::array<std::array<int, 8>, 8>& oct_table() {
    static const std::array<std::array<int, 8>, 8> t = {{
        {+1, +2, +3, +4, +5, +6, +7, +8},
        {+2, -1, +4, -3, +6, -5, -8, +7},
        {+3, -4, -1, +2, -7, -8, +5, +6},
        {+4, +3, -2, -1, -8, +7, -6, +5},
        {+5, -6, +7, +8, -1, +2, -3, -4},
        {+6, +5, +8, -7, -2, -1, +4, -3},
        {+7, +8, -5, +6, +3, -4, -1, -2},
        {+8, -7, -6, -5, +4, +3, +2, -1},
    }};
    return t;
}

/// Expected p x n signed-index matrix for the big real designs; entry
/// value v means x_v, -v means -x_v, 0 impossible (every slot is filled).
/// n = 10 -> 32 x 10, n = 12 -> 64 x 12.
inline std::vector<std::vector<int>> rod_big(int n) {
    const int groups = (n == 10) ? 4 : 8;
    const int p = groups * 8;
    const int k = (n == 10) ? 2 : 4;  // first-part column count
    // first-part signed group patterns (slot s holds sign * w_{|g|})
    std::vector<std::vector<int>> first;
    if (n == 10) {
        first = {{1, 2, 3, 4}, {2, -1, -4, 3}};
    } else {
        first = {{1, 2, 3, 4, 5, 6, 7, 8},
                 {2, -1, -4, 3, -6, 5, 8, -7},
                 {3, 4, -1, -2, -7, -8, 5, 6},
                 {4, -3, 2, -1, -8, 7, -6, 5}};
    }
    // octonion-column group routing: identity column (c=1) swaps halves with
    // a sign repair, columns c>=2 swap halves without one
    std::vector<int> swap_pattern(groups), swap_signed(groups);
    for (int s = 0; s < groups; ++s) {
        swap_pattern[s] = (s + groups / 2) % groups + 1;
        swap_signed[s] = (s < groups / 2) ? swap_pattern[s] : -swap_pattern[s];
    }
    std::vector<std::vector<int>> out(p, std::vector<int>(n, 0));
    for (int col = 0; col < k; ++col)
        for (int s = 0; s < groups; ++s) {
            const int g = first[col][s];
            for (int r = 0; r < 8; ++r)
                out[s * 8 + r][col] = (g > 0 ? 1 : -1) * ((std::abs(g) - 1) * 8 + r + 1);
        }
    for (int c = 1; c <= 8; ++c) {
        const int col = k + c - 1;
        const auto& pat = (c == 1) ? swap_signed : swap_pattern;
        for (int s = 0; s < groups; ++s) {
            const int g = pat[s];
            const int base = (std::abs(g) - 1) * 8;
            for (int r = 0; r < 8; ++r) {
                const int e = oct_table()[r][c - 1];
                const int sign = ((g > 0) == (e > 0)) ? 1 : -1;
                out[s * 8 + r][col] = sign * (base + std::abs(e));
            }
        }
    }
    return out;
}

}  // namespace golden
