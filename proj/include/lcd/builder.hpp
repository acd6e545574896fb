#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "lcd/circuit.hpp"

namespace lcd {

enum class SiteKind : uint8_t { data, check_z, check_x };

// Diagonal directions, indexed NW=0 NE=1 SW=2 SE=3.
inline constexpr int kDiagDx[4] = {-1, +1, -1, +1};
inline constexpr int kDiagDy[4] = {-1, -1, +1, +1};

// Qubit layout for one distance-d patch: d^2 sites on the odd-odd grid
// points carry the data when the patch sits in its home position, and the
// d^2-1 even-even check sites interleave them. Check types form a
// checkerboard; the half-checks on the left/right edges are Z-type and the
// ones on the top/bottom edges are X-type, so Z logicals run horizontally.
struct Geometry {
    int d = 0;
    std::vector<std::pair<int, int>> coords;      // qubit -> (x, y)
    std::vector<SiteKind> kind;                   // qubit -> role at home position
    std::vector<uint32_t> odd_sites;              // ascending; size d^2
    std::vector<uint32_t> even_sites;             // ascending; size d^2-1
    std::vector<std::array<int, 4>> diag;         // qubit -> diagonal neighbor or -1
    std::vector<uint32_t> logical_row;            // middle row of odd sites, left to right
    std::vector<int> grid;                        // flat (2d+1)^2 lookup, -1 for holes

    int index_at(int x, int y) const;             // -1 when no qubit there

    static Geometry make(int d);
};

// Builds the R-round wiggled memory circuit, ideal (no noise channels), with
// DETECTOR / OBSERVABLE_INCLUDE annotations derived by symbolic simulation.
//
// Round 1 runs a standard CZ-native syndrome extraction with ancillas on the
// check sites. Every later round measures out whichever half of the qubits
// currently carries the data: fresh qubits get H, four CZ layers couple the
// two halves along the diagonals (layer order reverses every round, so hook
// errors alternate orientation), and the old data is read out in the X basis
// and reset. The patch therefore hops between the two site classes, and every
// qubit is measured and reset once per two rounds. `rounds` must be odd so
// the data ends on the odd sites for the final Z-basis readout.
Circuit build_memory_circuit(int d, int rounds);

}  // namespace lcd
