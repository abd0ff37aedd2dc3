#include "conditions.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace dstbc {
namespace {

using json = nlohmann::json;

CertWitness make_witness(std::string family, std::size_t j1, std::size_t j2, std::size_t j3,
                         const BlockDiagResult& r) {
    CertWitness w;
    w.family = std::move(family);
    w.j1 = j1;
    w.j2 = j2;
    w.j3 = j3;
    w.row = r.off_row;
    w.col = r.off_col;
    w.magnitude = r.max_off_block;
    return w;
}

json witness_json(const CertWitness& w) {
    return json{{"family", w.family}, {"j1", w.j1},   {"j2", w.j2},
                {"j3", w.j3},         {"row", w.row}, {"col", w.col},
                {"magnitude", w.magnitude}};
}

}  // namespace

std::string to_string(TriState t) {
    switch (t) {
        case TriState::True: return "true";
        case TriState::False: return "false";
        default: return "not_applicable";
    }
}

ColocatedResult colocated_ssd_check(const Design& d, double tol) {
    const std::size_t N = d.n_relays;
    ColocatedResult res;
    DBlockSet blocks;
    for (std::size_t j = 0; j < N; ++j) {
        ComplexMatrix g = cmatmul_ah_b(d.relay_matrices[j], d.relay_matrices[j]);
        BlockDiagResult bd = is_block_diag_2x2(real_part(g), tol);
        if (!bd.ok) {
            res.witness = make_witness("d1", j + 1, 0, 0, bd);
            return res;
        }
        blocks.d1.push_back(std::move(bd.pattern));
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            ComplexMatrix gij = cmatmul_ah_b(d.relay_matrices[i], d.relay_matrices[j]);
            ComplexMatrix gji = cmatmul_ah_b(d.relay_matrices[j], d.relay_matrices[i]);
            RealMatrix d2(gij.rows, gij.cols);
            RealMatrix d3(gij.rows, gij.cols);
            for (std::size_t t = 0; t < gij.data.size(); ++t) {
                d2.data[t] = gij.data[t].real() + gji.data[t].real();
                d3.data[t] = gij.data[t].imag() - gji.data[t].imag();
            }
            BlockDiagResult b2 = is_block_diag_2x2(d2, tol);
            if (!b2.ok) {
                res.witness = make_witness("d2", i + 1, j + 1, 0, b2);
                return res;
            }
            BlockDiagResult b3 = is_block_diag_2x2(d3, tol);
            if (!b3.ok) {
                res.witness = make_witness("d3", i + 1, j + 1, 0, b3);
                return res;
            }
            blocks.d2.emplace(std::make_pair(i, j), std::move(b2.pattern));
            blocks.d3.emplace(std::make_pair(i, j), std::move(b3.pattern));
        }
    res.ssd = true;
    res.blocks = std::move(blocks);
    return res;
}

PcrcResult pcrc_ssd_check(const Design& d, double tol, TripleScan scan) {
    PcrcResult res;
    ColocatedResult co = colocated_ssd_check(d, tol);
    if (!co.ssd) {
        res.witness = co.witness;
        return res;
    }
    const std::size_t N = d.n_relays;
    std::vector<RealMatrix> ai(N), aq(N);
    for (std::size_t j = 0; j < N; ++j) {
        auto [re, im] = split_real_imag(d.relay_matrices[j]);
        ai[j] = std::move(re);
        aq[j] = std::move(im);
    }
    for (std::size_t j2 = 0; j2 < N; ++j2) {
        // middle matrices depend on j2 only
        RealMatrix mid_g = matmul_a_bt(ai[j2], ai[j2]);
        add_inplace(mid_g, matmul_a_bt(aq[j2], aq[j2]));
        RealMatrix mid_x = matmul_a_bt(ai[j2], aq[j2]);
        add_inplace(mid_x, matmul_a_bt(aq[j2], ai[j2]));
        for (std::size_t j1 = 0; j1 < N; ++j1) {
            const std::size_t j3_lo = (scan == TripleScan::UpperOnly) ? j1 : 0;
            for (std::size_t j3 = j3_lo; j3 < N; ++j3) {
                RealMatrix p = matmul_at_b(ai[j1], matmul(mid_g, ai[j3]));
                RealMatrix dg = transpose(p);  // the swapped-index partner
                add_inplace(dg, p);
                {
                    RealMatrix q = matmul_at_b(aq[j1], matmul(mid_g, aq[j3]));
                    add_transpose_inplace(dg, q);
                    add_inplace(dg, q);
                }
                BlockDiagResult bg = is_block_diag_2x2(dg, tol);
                if (!bg.ok) {
                    res.witness = make_witness("triple_g", j1 + 1, j2 + 1, j3 + 1, bg);
                    return res;
                }
                RealMatrix px = matmul_at_b(ai[j1], matmul(mid_x, aq[j3]));
                RealMatrix dx = transpose(px);
                add_inplace(dx, px);
                {
                    RealMatrix q = matmul_at_b(aq[j1], matmul(mid_x, ai[j3]));
                    add_transpose_inplace(dx, q);
                    add_inplace(dx, q);
                }
                BlockDiagResult bx = is_block_diag_2x2(dx, tol);
                if (!bx.ok) {
                    res.witness = make_witness("triple_x", j1 + 1, j2 + 1, j3 + 1, bx);
                    return res;
                }
            }
        }
    }
    res.ssd = true;
    return res;
}

TriState full_diversity_check(const Design& d, double tol) {
    ColocatedResult co = colocated_ssd_check(d, tol);
    if (!co.ssd) return TriState::NotApplicable;
    for (const auto& [key, pat] : co.blocks->d2)
        for (const auto& b : pat.blocks)
            for (double v : b)
                if (std::abs(v) > tol) return TriState::NotApplicable;
    for (const auto& [key, pat] : co.blocks->d3)
        for (const auto& b : pat.blocks)
            for (double v : b)
                if (std::abs(v) > tol) return TriState::NotApplicable;
    for (const auto& pat : co.blocks->d1)
        for (const auto& b : pat.blocks)
            if (!is_positive_definite_2x2(b, tol)) return TriState::False;
    return TriState::True;
}

bool rar3_sufficient_check(const Design& d, double tol) {
    double alpha = -1.0;
    for (const auto& a : d.relay_matrices) {
        auto [ai, aq] = split_real_imag(a);
        RealMatrix z(2 * a.rows, a.cols);
        for (std::size_t r = 0; r < a.rows; ++r)
            for (std::size_t c = 0; c < a.cols; ++c) {
                z(r, c) = ai(r, c);
                z(a.rows + r, c) = aq(r, c);
            }
        RealMatrix zz = matmul_a_bt(z, z);
        if (alpha < 0.0) alpha = zz(0, 0);
        for (std::size_t r = 0; r < zz.rows; ++r)
            for (std::size_t c = 0; c < zz.cols; ++c) {
                const double want = (r == c) ? alpha : 0.0;
                if (std::abs(zz(r, c) - want) > tol) return false;
            }
    }
    return alpha > tol;
}

CertReport certify(const Design& d, double tol) {
    CertReport rep;
    rep.design_name = d.name;
    rep.n_relays = d.n_relays;
    rep.rate = d.rate_string();
    ColocatedResult co = colocated_ssd_check(d, tol);
    rep.colocated_ssd = co.ssd;
    PcrcResult pc = pcrc_ssd_check(d, tol);
    rep.pcrc_ssd = pc.ssd;
    rep.full_diversity = full_diversity_check(d, tol);
    rep.rar3_sufficient = rar3_sufficient_check(d, tol);
    if (!pc.ssd) rep.witness = pc.witness ? pc.witness : co.witness;
    return rep;
}

std::string CertReport::to_json() const {
    json j;
    j["design"] = design_name;
    j["n_relays"] = n_relays;
    j["rate"] = rate;
    j["colocated_ssd"] = colocated_ssd;
    j["pcrc_ssd"] = pcrc_ssd;
    j["full_diversity_all_constellations"] = to_string(full_diversity);
    j["rar3_sufficient"] = rar3_sufficient;
    j["witness"] = witness ? witness_json(*witness) : json(nullptr);
    return j.dump(2);
}

std::string CertReport::to_text() const {
    std::ostringstream os;
    os << "design            : " << design_name << "\n"
       << "relays            : " << n_relays << "\n"
       << "rate              : " << rate << "\n"
       << "colocated SSD     : " << (colocated_ssd ? "True" : "False") << "\n"
       << "PCRC SSD          : " << (pcrc_ssd ? "True" : "False") << "\n"
       << "full diversity    : " << to_string(full_diversity) << "\n"
       << "scaled-identity   : " << (rar3_sufficient ? "True" : "False") << "\n";
    if (witness)
        os << "witness           : " << witness->family << " (" << witness->j1 << "," << witness->j2
           << "," << witness->j3 << ") off-block |" << witness->magnitude << "| at (" << witness->row
           << "," << witness->col << ")\n";
    return os.str();
}

std::vector<Table1Row> table1_report() {
    std::vector<Table1Row> rows;
    auto add = [&rows](const std::string& code, const std::string& relays, const Design& d) {
        Table1Row r;
        r.code = code;
        r.relays = relays;
        r.rate = d.rate_string();
        r.necessary_sufficient = pcrc_ssd_check(d).ssd;
        r.rar3_sufficient = rar3_sufficient_check(d);
        rows.push_back(std::move(r));
    };
    add("COD2 (Alamouti)", "2", cod_square(1));
    add("COD4", "4", cod_square(2));
    add("CIOD4", "4", ciod(4));
    add("CUW4", "4", cuw(2));
    add("COD8", "8", cod_square(3));
    add("CIOD8", "8", ciod(8));
    add("RR8", "8", rr8());
    {
        // representative instantiations of the stacked-COD family
        Design s4 = stack_to_cod(rod(4));
        Design s10 = stack_to_cod(rod(10));
        Table1Row r;
        r.code = "CODs from RODs";
        r.relays = ">=4";
        r.rate = s4.rate_string();
        r.necessary_sufficient = pcrc_ssd_check(s4).ssd && pcrc_ssd_check(s10).ssd;
        r.rar3_sufficient = rar3_sufficient_check(s4) && rar3_sufficient_check(s10);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
    std::size_t wc = 4, wr = 6;
    for (const auto& r : rows) wc = std::max(wc, r.code.size());
    std::ostringstream os;
    os << "Code";
    os << std::string(wc - 4 + 2, ' ') << "Relays  Rate  Nec&Suff  ScaledIdSuff\n";
    for (const auto& r : rows) {
        os << r.code << std::string(wc - r.code.size() + 2, ' ');
        os << r.relays << std::string(wr - r.relays.size(), ' ');
        os << r.rate << std::string(6 - std::min<std::size_t>(5, r.rate.size()), ' ');
        os << (r.necessary_sufficient ? "True " : "False") << "     ";
        os << (r.rar3_sufficient ? "True" : "False") << "\n";
    }
    return os.str();
}

std::string table1_json(const std::vector<Table1Row>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"code", r.code},
                       {"relays", r.relays},
                       {"rate", r.rate},
                       {"necessary_sufficient", r.necessary_sufficient},
                       {"rar3_sufficient", r.rar3_sufficient}});
    return arr.dump(2);
}

RealMatrix matched_filter_noise_covariance(const Design& d, const ChannelRealization& ch,
                                           const EnergyPolicy& energy) {
    if (ch.source_to_relay.size() != d.n_relays || ch.relay_to_dest.size() != d.n_relays)
        throw ValidationError("matched_filter_noise_covariance: channel size mismatch");
    const std::size_t N = d.n_relays;
    const std::size_t L = 2 * d.n_symbols;
    const double g = energy.amplification;
    const double kappa = g * g * g * g * energy.broadcast_energy / 2.0;

    // relay-noise part: kappa * sum_j2 L_j2 L_j2^T with
    // L_j2 = sum_j1 |h_s,j1| Re(conj(h_j1d) h_j2d A_j1^H A_j2)
    RealMatrix cov(L, L);
    for (std::size_t j2 = 0; j2 < N; ++j2) {
        RealMatrix lmat(L, L);
        for (std::size_t j1 = 0; j1 < N; ++j1) {
            ComplexMatrix gram = cmatmul_ah_b(d.relay_matrices[j1], d.relay_matrices[j2]);
            const cplx w = std::conj(ch.relay_to_dest[j1]) * ch.relay_to_dest[j2];
            const double mag = std::abs(ch.source_to_relay[j1]);
            for (std::size_t t = 0; t < gram.data.size(); ++t)
                lmat.data[t] += mag * (w * gram.data[t]).real();
        }
        RealMatrix outer = matmul_a_bt(lmat, lmat);
        add_inplace(cov, outer, kappa);
    }

    // destination-noise part: 0.5 * Re(H^H H)
    RealMatrix hreal = effective_channel(d, ch, energy, TransmissionMode::PhaseCompensatedPcrc);
    RealMatrix gramr = matmul_at_b(hreal, hreal);
    add_inplace(cov, gramr, 0.5);
    return cov;
}

}  // namespace dstbc
