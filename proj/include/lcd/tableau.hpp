#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lcd {

// GF(2) affine combination of measurement-outcome symbols: constant XOR the
// parity of a subset of symbols. Symbols are allocated by the tableau, one
// per intrinsically random measurement.
struct AffineForm {
    bool constant = false;
    std::vector<uint64_t> bits;  // symbol-index bitset

    void flip(uint32_t s);
    bool test(uint32_t s) const;
    void xor_with(const AffineForm& o);
    bool any_symbols() const;
    bool is_constant() const { return !any_symbols(); }
    // Highest symbol index present, or -1 when constant.
    int leading_symbol() const;
    std::vector<uint32_t> symbol_list() const;
    // Value under a concrete assignment of every symbol.
    bool evaluate(const std::vector<bool>& assignment) const;

    bool operator==(const AffineForm& o) const;
};

// Stabilizer-tableau simulator over the gate set {H, CZ, RZ, MZ} whose row
// signs are affine forms instead of concrete bits. A random measurement
// returns a fresh symbol; a determined one returns the affine combination of
// earlier symbols that its outcome necessarily equals. This turns detector
// discovery into linear algebra: any measurement whose outcome form is a
// combination of earlier forms closes a deterministic parity.
class Tableau {
  public:
    explicit Tableau(uint32_t num_qubits);

    void h(uint32_t q);
    void cz(uint32_t a, uint32_t b);
    // Reset to |0>: measure, then apply X classically conditioned on the
    // outcome form. Linear in signs, so the symbolic treatment stays exact.
    void rz(uint32_t q);
    // Z-basis measurement; returns the outcome as an affine form.
    AffineForm mz(uint32_t q);
    // Sign form of the stabilizer equal to the Z-product over `qs`, without
    // disturbing the state; throws if that product is not in the group.
    AffineForm z_product_sign(const std::vector<uint32_t>& qs);

    uint32_t num_qubits() const { return n_; }
    uint32_t num_symbols() const { return next_symbol_; }

  private:
    uint32_t n_;
    uint32_t words_;
    // Rows 0..n-1 destabilizers, n..2n-1 stabilizers, 2n scratch.
    std::vector<uint64_t> x_, z_;
    std::vector<AffineForm> sign_;  // tracked for stabilizer rows + scratch only
    uint32_t next_symbol_ = 0;

    bool xbit(uint32_t row, uint32_t q) const;
    bool zbit(uint32_t row, uint32_t q) const;
    // row_h *= row_i with sign bookkeeping (skipped for destabilizer h).
    void rowsum(uint32_t h, uint32_t i);
};

// Online GF(2) elimination over the stream of measurement-outcome forms.
// Feeding each record's form in order reports, the moment it happens, that a
// set of records has deterministic XOR — exactly a detector definition.
class ParityCloser {
  public:
    struct Closure {
        std::vector<size_t> records;  // ascending; includes the fed record
        bool constant;                // the deterministic XOR value
    };

    // Returns the closure if `form` is dependent on earlier fed forms;
    // otherwise remembers it (pivoted on its leading symbol) and returns
    // nullopt.
    std::optional<Closure> feed(size_t record, const AffineForm& form);

    // Reduces an arbitrary form against the current basis. Returns the
    // records whose forms were folded in plus whatever is left of the form;
    // a constant leftover means `form` XOR those records is deterministic.
    std::pair<std::vector<size_t>, AffineForm> reduce(AffineForm form) const;

  private:
    struct Row {
        AffineForm form;
        std::vector<uint64_t> records;  // record-index bitset
    };
    std::vector<Row> rows_;
    std::vector<int> pivot_of_symbol_;  // symbol -> row index or -1
};

}  // namespace lcd
