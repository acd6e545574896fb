#include "lcd/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace lcd {

void AffineForm::flip(uint32_t s) {
    size_t w = s / 64;
    if (w >= bits.size()) bits.resize(w + 1, 0);
    bits[w] ^= 1ull << (s % 64);
}

bool AffineForm::test(uint32_t s) const {
    size_t w = s / 64;
    return w < bits.size() && (bits[w] >> (s % 64)) & 1;
}

void AffineForm::xor_with(const AffineForm& o) {
    constant ^= o.constant;
    if (o.bits.size() > bits.size()) bits.resize(o.bits.size(), 0);
    for (size_t i = 0; i < o.bits.size(); i++) bits[i] ^= o.bits[i];
}

bool AffineForm::any_symbols() const {
    for (uint64_t w : bits)
        if (w) return true;
    return false;
}

int AffineForm::leading_symbol() const {
    for (size_t i = bits.size(); i-- > 0;)
        if (bits[i]) return static_cast<int>(i * 64 + 63 - __builtin_clzll(bits[i]));
    return -1;
}

std::vector<uint32_t> AffineForm::symbol_list() const {
    std::vector<uint32_t> out;
    for (size_t i = 0; i < bits.size(); i++)
        for (uint64_t w = bits[i]; w; w &= w - 1)
            out.push_back(static_cast<uint32_t>(i * 64 + __builtin_ctzll(w)));
    return out;
}

bool AffineForm::evaluate(const std::vector<bool>& assignment) const {
    bool v = constant;
    for (size_t i = 0; i < bits.size(); i++)
        for (uint64_t w = bits[i]; w; w &= w - 1) {
            size_t s = i * 64 + __builtin_ctzll(w);
            assert(s < assignment.size());
            v ^= assignment[s];
        }
    return v;
}

bool AffineForm::operator==(const AffineForm& o) const {
    if (constant != o.constant) return false;
    size_t n = std::max(bits.size(), o.bits.size());
    for (size_t i = 0; i < n; i++) {
        uint64_t a = i < bits.size() ? bits[i] : 0;
        uint64_t b = i < o.bits.size() ? o.bits[i] : 0;
        if (a != b) return false;
    }
    return true;
}

Tableau::Tableau(uint32_t num_qubits) : n_(num_qubits), words_((num_qubits + 63) / 64) {
    x_.assign(static_cast<size_t>(2 * n_ + 1) * words_, 0);
    z_.assign(static_cast<size_t>(2 * n_ + 1) * words_, 0);
    sign_.assign(2 * n_ + 1, {});
    for (uint32_t i = 0; i < n_; i++) {
        x_[static_cast<size_t>(i) * words_ + i / 64] |= 1ull << (i % 64);           // destabilizer X_i
        z_[static_cast<size_t>(n_ + i) * words_ + i / 64] |= 1ull << (i % 64);      // stabilizer Z_i
    }
}

bool Tableau::xbit(uint32_t row, uint32_t q) const {
    return (x_[static_cast<size_t>(row) * words_ + q / 64] >> (q % 64)) & 1;
}
bool Tableau::zbit(uint32_t row, uint32_t q) const {
    return (z_[static_cast<size_t>(row) * words_ + q / 64] >> (q % 64)) & 1;
}

void Tableau::h(uint32_t q) {
    size_t w = q / 64;
    uint64_t m = 1ull << (q % 64);
    for (uint32_t r = 0; r < 2 * n_; r++) {
        uint64_t& xw = x_[static_cast<size_t>(r) * words_ + w];
        uint64_t& zw = z_[static_cast<size_t>(r) * words_ + w];
        if (r >= n_ && (xw & m) && (zw & m)) sign_[r].constant ^= 1;
        uint64_t xb = xw & m, zb = zw & m;
        xw = (xw & ~m) | zb;
        zw = (zw & ~m) | xb;
    }
}

void Tableau::cz(uint32_t a, uint32_t b) {
    size_t wa = a / 64, wb = b / 64;
    uint64_t ma = 1ull << (a % 64), mb = 1ull << (b % 64);
    for (uint32_t r = 0; r < 2 * n_; r++) {
        size_t base = static_cast<size_t>(r) * words_;
        bool xa = x_[base + wa] & ma, za = z_[base + wa] & ma;
        bool xb = x_[base + wb] & mb, zb = z_[base + wb] & mb;
        if (r >= n_ && xa && xb && (za ^ zb)) sign_[r].constant ^= 1;
        if (xb) z_[base + wa] ^= ma;
        if (xa) z_[base + wb] ^= mb;
    }
}

void Tableau::rowsum(uint32_t h, uint32_t i) {
    size_t bh = static_cast<size_t>(h) * words_, bi = static_cast<size_t>(i) * words_;
    if (h >= n_) {
        // Power-of-i accumulated while multiplying Pauli products; always
        // resolves to a sign for rows of the group.
        int g = 0;
        for (uint32_t w = 0; w < words_; w++) {
            uint64_t x1 = x_[bi + w], z1 = z_[bi + w];
            uint64_t busy = x1 | z1;
            while (busy) {
                int b = __builtin_ctzll(busy);
                busy &= busy - 1;
                uint64_t m = 1ull << b;
                bool a1 = x1 & m, c1 = z1 & m;
                bool a2 = x_[bh + w] & m, c2 = z_[bh + w] & m;
                if (a1 && c1)
                    g += (c2 ? 1 : 0) - (a2 ? 1 : 0);
                else if (a1)
                    g += c2 ? (a2 ? 1 : -1) : 0;
                else
                    g += a2 ? (c2 ? -1 : 1) : 0;
            }
        }
        int t = ((g % 4) + 4) % 4;
        if (t != 0 && t != 2) throw std::logic_error("tableau: rowsum phase not +-1");
        sign_[h].xor_with(sign_[i]);
        if (t == 2) sign_[h].constant ^= 1;
    }
    for (uint32_t w = 0; w < words_; w++) {
        x_[bh + w] ^= x_[bi + w];
        z_[bh + w] ^= z_[bi + w];
    }
}

AffineForm Tableau::mz(uint32_t q) {
    uint32_t p = 2 * n_;
    for (uint32_t r = n_; r < 2 * n_; r++)
        if (xbit(r, q)) {
            p = r;
            break;
        }
    if (p < 2 * n_) {
        // Intrinsically random: collapse onto a fresh symbol.
        for (uint32_t r = 0; r < 2 * n_; r++)
            if (r != p && xbit(r, q)) rowsum(r, p);
        size_t bd = static_cast<size_t>(p - n_) * words_, bp = static_cast<size_t>(p) * words_;
        for (uint32_t w = 0; w < words_; w++) {
            x_[bd + w] = x_[bp + w];
            z_[bd + w] = z_[bp + w];
            x_[bp + w] = 0;
            z_[bp + w] = 0;
        }
        z_[bp + q / 64] |= 1ull << (q % 64);
        AffineForm f;
        f.flip(next_symbol_++);
        sign_[p] = f;
        return f;
    }
    // Determined: multiply out the stabilizers selected by destabilizer X bits.
    size_t bs = static_cast<size_t>(2 * n_) * words_;
    for (uint32_t w = 0; w < words_; w++) {
        x_[bs + w] = 0;
        z_[bs + w] = 0;
    }
    sign_[2 * n_] = {};
    for (uint32_t i = 0; i < n_; i++)
        if (xbit(i, q)) rowsum(2 * n_, n_ + i);
    return sign_[2 * n_];
}

AffineForm Tableau::z_product_sign(const std::vector<uint32_t>& qs) {
    // A group member decomposes over the stabilizer rows with exponents given
    // by anticommutation against the destabilizers.
    size_t bs = static_cast<size_t>(2 * n_) * words_;
    for (uint32_t w = 0; w < words_; w++) {
        x_[bs + w] = 0;
        z_[bs + w] = 0;
    }
    sign_[2 * n_] = {};
    for (uint32_t i = 0; i < n_; i++) {
        bool par = false;
        for (uint32_t q : qs) par ^= xbit(i, q);
        if (par) rowsum(2 * n_, n_ + i);
    }
    std::vector<uint64_t> want(words_, 0);
    for (uint32_t q : qs) want[q / 64] ^= 1ull << (q % 64);
    for (uint32_t w = 0; w < words_; w++)
        if (x_[bs + w] != 0 || z_[bs + w] != want[w])
            throw std::logic_error("tableau: Z-product is not a stabilizer");
    return sign_[2 * n_];
}

void Tableau::rz(uint32_t q) {
    AffineForm f = mz(q);
    if (!f.constant && !f.any_symbols()) return;  // already exactly |0>
    // X^f on qubit q: flips the sign of rows whose Pauli anticommutes with X.
    for (uint32_t r = n_; r < 2 * n_; r++)
        if (zbit(r, q)) sign_[r].xor_with(f);
}

std::optional<ParityCloser::Closure> ParityCloser::feed(size_t record, const AffineForm& form) {
    auto [recs, leftover] = reduce(form);
    // Fold the fed record itself in.
    auto it = std::lower_bound(recs.begin(), recs.end(), record);
    recs.insert(it, record);
    if (leftover.is_constant()) return Closure{std::move(recs), leftover.constant};

    int lead = leftover.leading_symbol();
    if (pivot_of_symbol_.size() <= static_cast<size_t>(lead)) pivot_of_symbol_.resize(lead + 1, -1);
    pivot_of_symbol_[lead] = static_cast<int>(rows_.size());
    Row row;
    row.form = std::move(leftover);
    for (size_t r : recs) {
        size_t w = r / 64;
        if (row.records.size() <= w) row.records.resize(w + 1, 0);
        row.records[w] ^= 1ull << (r % 64);
    }
    rows_.push_back(std::move(row));
    return std::nullopt;
}

std::pair<std::vector<size_t>, AffineForm> ParityCloser::reduce(AffineForm form) const {
    std::vector<uint64_t> recs;
    for (;;) {
        int lead = form.leading_symbol();
        if (lead < 0) break;
        if (static_cast<size_t>(lead) >= pivot_of_symbol_.size() || pivot_of_symbol_[lead] < 0) break;
        const Row& row = rows_[pivot_of_symbol_[lead]];
        form.xor_with(row.form);
        if (row.records.size() > recs.size()) recs.resize(row.records.size(), 0);
        for (size_t i = 0; i < row.records.size(); i++) recs[i] ^= row.records[i];
    }
    std::vector<size_t> out;
    for (size_t i = 0; i < recs.size(); i++)
        for (uint64_t w = recs[i]; w; w &= w - 1) out.push_back(i * 64 + __builtin_ctzll(w));
    return {std::move(out), std::move(form)};
}

}  // namespace lcd
