#include "lcd/builder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lcd/tableau.hpp"

namespace lcd {

int Geometry::index_at(int x, int y) const {
    if (x < 0 || y < 0 || x > 2 * d || y > 2 * d) return -1;
    return grid[static_cast<size_t>(y) * (2 * d + 1) + x];
}

Geometry Geometry::make(int d) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("geometry: distance must be odd and >= 3");
    Geometry g;
    g.d = d;
    g.grid.assign(static_cast<size_t>(2 * d + 1) * (2 * d + 1), -1);
    for (int y = 0; y <= 2 * d; y++) {
        for (int x = 0; x <= 2 * d; x++) {
            SiteKind kind;
            if (x % 2 == 1 && y % 2 == 1) {
                kind = SiteKind::data;
            } else if (x % 2 == 0 && y % 2 == 0) {
                int i = x / 2, j = y / 2;
                bool xtype = (i + j) % 2 == 1;
                bool interior = i >= 1 && i <= d - 1 && j >= 1 && j <= d - 1;
                bool side_lr = (i == 0 || i == d) && j >= 1 && j <= d - 1 && !xtype;
                bool side_tb = (j == 0 || j == d) && i >= 1 && i <= d - 1 && xtype;
                if (!(interior || side_lr || side_tb)) continue;
                kind = xtype ? SiteKind::check_x : SiteKind::check_z;
            } else {
                continue;
            }
            uint32_t q = static_cast<uint32_t>(g.coords.size());
            g.grid[static_cast<size_t>(y) * (2 * d + 1) + x] = static_cast<int>(q);
            g.coords.emplace_back(x, y);
            g.kind.push_back(kind);
            (kind == SiteKind::data ? g.odd_sites : g.even_sites).push_back(q);
        }
    }
    if (g.odd_sites.size() != static_cast<size_t>(d) * d ||
        g.even_sites.size() != static_cast<size_t>(d) * d - 1)
        throw std::logic_error("geometry: site count mismatch");

    g.diag.resize(g.coords.size());
    for (uint32_t q = 0; q < g.coords.size(); q++) {
        auto [x, y] = g.coords[q];
        for (int k = 0; k < 4; k++) g.diag[q][k] = g.index_at(x + kDiagDx[k], y + kDiagDy[k]);
    }
    for (int i = 0; i < d; i++) g.logical_row.push_back(static_cast<uint32_t>(g.index_at(2 * i + 1, d)));
    return g;
}

namespace {

struct Builder {
    const Geometry& g;
    Circuit c;
    Tableau tab;
    ParityCloser closer;
    std::vector<AffineForm> record_form;

    Builder(const Geometry& g_, int rounds) : g(g_), tab(static_cast<uint32_t>(g_.coords.size())) {
        c.num_qubits = static_cast<uint32_t>(g.coords.size());
        c.distance = g.d;
        c.rounds = rounds;
        c.coords = g.coords;
    }

    size_t nrec() const { return record_form.size(); }

    void apply_h(std::vector<uint32_t> qs) {
        std::sort(qs.begin(), qs.end());
        Instruction ins;
        ins.op = Op::H;
        ins.targets = std::move(qs);
        for (uint32_t q : ins.targets) tab.h(q);
        c.append(std::move(ins));
    }

    void apply_cz_layer(int dir) {
        Instruction ins;
        ins.op = Op::CZ;
        for (uint32_t o : g.odd_sites) {
            int e = g.diag[o][dir];
            if (e < 0) continue;
            ins.targets.push_back(o);
            ins.targets.push_back(static_cast<uint32_t>(e));
            tab.cz(o, static_cast<uint32_t>(e));
        }
        c.append(std::move(ins));
    }

    // Measures qs in ascending order (optionally with reset) and emits one
    // DETECTOR per deterministic parity discovered, unless suppressed.
    std::vector<size_t> measure(const std::vector<uint32_t>& qs, bool reset, bool emit_detectors) {
        Instruction m;
        m.op = Op::MZ;
        m.targets = qs;
        c.append(std::move(m));
        std::vector<size_t> recs;
        std::vector<std::vector<size_t>> found;
        for (uint32_t q : qs) {
            AffineForm f = tab.mz(q);
            size_t rec = record_form.size();
            record_form.push_back(f);
            recs.push_back(rec);
            auto closure = closer.feed(rec, f);
            if (closure) {
                // Every deterministic parity of the ideal circuit reads 0.
                if (closure->constant) throw std::logic_error("builder: deterministic parity is nonzero");
                if (emit_detectors) found.push_back(std::move(closure->records));
            }
        }
        if (reset) {
            Instruction r;
            r.op = Op::RZ;
            r.targets = qs;
            c.append(std::move(r));
            for (uint32_t q : qs) tab.rz(q);
        }
        for (const auto& members : found) emit_detector(members);
        return recs;
    }

    void emit_detector(const std::vector<size_t>& members) {
        Instruction det;
        det.op = Op::DETECTOR;
        for (size_t rec : members)
            det.rec.push_back(static_cast<int32_t>(rec) - static_cast<int32_t>(nrec()));
        c.append(std::move(det));
    }
};

}  // namespace

Circuit build_memory_circuit(int d, int rounds) {
    if (rounds < 1 || rounds % 2 == 0)
        throw std::invalid_argument("memory circuit: rounds must be odd and >= 1");
    Geometry g = Geometry::make(d);
    Builder b(g, rounds);
    Circuit& c = b.c;

    // Layer order: an opposite-diagonal pair, then the other pair, so each
    // data qubit's two same-type check couplings sit in adjacent layers and a
    // single H moment mid-round can switch its basis frame. Reversing the
    // order on alternate rounds flips which way hook errors point.
    const std::array<int, 4> order_fwd{0, 3, 1, 2};  // NW SE NE SW
    const std::array<int, 4> order_rev{2, 1, 3, 0};  // SW NE SE NW

    // Parity classes of the data sites: sites whose X-type neighbors lie on
    // the NW/SE diagonal enter the X frame for the first layer pair, the
    // others for the second.
    std::vector<uint32_t> first_pair, second_pair;
    for (uint32_t q : g.odd_sites) {
        auto [x, y] = g.coords[q];
        int i = (x - 1) / 2, j = (y - 1) / 2;
        ((i + j) % 2 ? first_pair : second_pair).push_back(q);
    }

    auto concat = [](std::vector<uint32_t> a, const std::vector<uint32_t>& extra) {
        a.insert(a.end(), extra.begin(), extra.end());
        return a;
    };

    // Round 1: establish the code with a standard extraction round.
    {
        Instruction rz;
        rz.op = Op::RZ;
        for (uint32_t q = 0; q < c.num_qubits; q++) rz.targets.push_back(q);
        c.append(std::move(rz));
        c.tick();
        b.apply_h(concat(std::vector<uint32_t>(g.even_sites), first_pair));
        c.tick();
        b.apply_cz_layer(order_fwd[0]);
        c.tick();
        b.apply_cz_layer(order_fwd[1]);
        c.tick();
        b.apply_h(std::vector<uint32_t>(g.odd_sites));
        c.tick();
        b.apply_cz_layer(order_fwd[2]);
        c.tick();
        b.apply_cz_layer(order_fwd[3]);
        c.tick();
        b.apply_h(concat(std::vector<uint32_t>(g.even_sites), second_pair));
        c.tick();
        b.measure(g.even_sites, /*reset=*/true, /*emit_detectors=*/true);
        c.tick();
    }

    // Hop rounds: measure out whichever half currently holds the data.
    for (int r = 2; r <= rounds; r++) {
        bool measure_data_sites = (r % 2 == 0);
        const auto& s = measure_data_sites ? g.odd_sites : g.even_sites;
        const auto& t = measure_data_sites ? g.even_sites : g.odd_sites;
        const auto& ord = (r % 2 == 0) ? order_rev : order_fwd;
        b.apply_h(std::vector<uint32_t>(t));
        c.tick();
        for (int k = 0; k < 4; k++) {
            b.apply_cz_layer(ord[k]);
            c.tick();
        }
        b.apply_h(std::vector<uint32_t>(s));
        c.tick();
        b.measure(s, /*reset=*/true, /*emit_detectors=*/true);
        c.tick();
    }

    // Final readout. The last-layer detectors are constructed one per Z
    // check instead of discovered, so the logical parity itself can never be
    // absorbed into the detector set.
    struct FinalCheck {
        std::vector<uint32_t> support;
        std::vector<size_t> prior_records;
    };
    std::vector<FinalCheck> final_checks;
    for (uint32_t e : g.even_sites) {
        if (g.kind[e] != SiteKind::check_z) continue;
        FinalCheck fc;
        for (int k = 0; k < 4; k++)
            if (g.diag[e][k] >= 0) fc.support.push_back(static_cast<uint32_t>(g.diag[e][k]));
        std::sort(fc.support.begin(), fc.support.end());
        AffineForm value = b.tab.z_product_sign(fc.support);
        auto [recs, leftover] = b.closer.reduce(value);
        if (!leftover.is_constant() || leftover.constant)
            throw std::logic_error("builder: check value does not resolve to prior records");
        fc.prior_records = std::move(recs);
        final_checks.push_back(std::move(fc));
    }

    std::vector<size_t> final_recs = b.measure(g.odd_sites, /*reset=*/false, /*emit_detectors=*/false);
    std::vector<size_t> rec_of(c.num_qubits, SIZE_MAX);
    for (size_t i = 0; i < g.odd_sites.size(); i++) rec_of[g.odd_sites[i]] = final_recs[i];

    for (const auto& fc : final_checks) {
        std::vector<size_t> members = fc.prior_records;
        for (uint32_t q : fc.support) members.push_back(rec_of[q]);
        std::sort(members.begin(), members.end());
        b.emit_detector(members);
    }

    // The logical readout: the middle-row parity plus whatever earlier
    // records reconstruct its frame.
    AffineForm logical;
    for (uint32_t q : g.logical_row) logical.xor_with(b.record_form[rec_of[q]]);
    auto [obs_recs, leftover] = b.closer.reduce(logical);
    if (!leftover.is_constant() || leftover.constant)
        throw std::logic_error("builder: logical readout does not resolve");
    Instruction obs;
    obs.op = Op::OBSERVABLE_INCLUDE;
    for (size_t rec : obs_recs)
        obs.rec.push_back(static_cast<int32_t>(rec) - static_cast<int32_t>(b.nrec()));
    c.append(std::move(obs));

    c.validate();
    return c;
}

}  // namespace lcd
