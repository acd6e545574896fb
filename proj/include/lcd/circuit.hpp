#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lcd {

// Gate and annotation set. Gates are the native ops of the target hardware
// (H, CZ, Z-basis measure/reset); the *_ERR kinds are stochastic channels a
// noise model inserts; DETECTOR / OBSERVABLE_INCLUDE / TICK are annotations.
enum class Op : uint8_t {
    H,
    CZ,
    RZ,
    MZ,
    DEPOLARIZE1,
    DEPOLARIZE2,
    LEAK,
    RELAX,
    HERALD_ERR,
    DETECTOR,
    OBSERVABLE_INCLUDE,
    TICK,
};

const char* op_name(Op op);
bool op_is_noise(Op op);

struct Instruction {
    Op op;
    std::vector<uint32_t> targets;  // qubit indices (gates / channels)
    std::vector<double> args;       // probabilities; MZ may carry a flip arg
    std::vector<int32_t> rec;       // negative record offsets (annotations)

    bool operator==(const Instruction&) const = default;
};

struct Circuit {
    uint32_t num_qubits = 0;
    int distance = 0;  // 0 when not produced by the memory builder
    int rounds = 0;
    std::vector<std::pair<int, int>> coords;  // per-qubit grid coordinates
    std::vector<Instruction> instructions;

    bool operator==(const Circuit&) const = default;

    void append(Op op, std::initializer_list<uint32_t> targets, std::initializer_list<double> args = {});
    void append(Instruction ins);
    void tick();

    size_t num_measurements() const;
    size_t num_moments() const;  // TICK-delimited groups
    size_t num_detectors() const;

    // Detector definitions with record offsets resolved to absolute
    // measurement indices, in circuit order.
    std::vector<std::vector<size_t>> detector_defs() const;
    // Union of all OBSERVABLE_INCLUDE references, resolved likewise.
    std::vector<size_t> observable_def() const;

    // Throws std::runtime_error describing the first violation found:
    // out-of-range targets, colliding gate targets within a moment,
    // malformed probabilities, or unresolvable record references.
    void validate() const;

    std::string to_text() const;
    static Circuit from_text(const std::string& text);
};

}  // namespace lcd
