#include "lcd/circuit.hpp"

#include <cstdio>
#include <cstring>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lcd {

const char* op_name(Op op) {
    switch (op) {
        case Op::H: return "H";
        case Op::CZ: return "CZ";
        case Op::RZ: return "RZ";
        case Op::MZ: return "MZ";
        case Op::DEPOLARIZE1: return "DEPOLARIZE1";
        case Op::DEPOLARIZE2: return "DEPOLARIZE2";
        case Op::LEAK: return "LEAK";
        case Op::RELAX: return "RELAX";
        case Op::HERALD_ERR: return "HERALD_ERR";
        case Op::DETECTOR: return "DETECTOR";
        case Op::OBSERVABLE_INCLUDE: return "OBSERVABLE_INCLUDE";
        case Op::TICK: return "TICK";
    }
    return "?";
}

bool op_is_noise(Op op) {
    switch (op) {
        case Op::DEPOLARIZE1:
        case Op::DEPOLARIZE2:
        case Op::LEAK:
        case Op::RELAX:
        case Op::HERALD_ERR:
            return true;
        default:
            return false;
    }
}

void Circuit::append(Op op, std::initializer_list<uint32_t> targets, std::initializer_list<double> args) {
    Instruction ins;
    ins.op = op;
    ins.targets.assign(targets);
    ins.args.assign(args);
    instructions.push_back(std::move(ins));
}

void Circuit::append(Instruction ins) { instructions.push_back(std::move(ins)); }

void Circuit::tick() { append(Op::TICK, {}); }

size_t Circuit::num_measurements() const {
    size_t n = 0;
    for (const auto& ins : instructions)
        if (ins.op == Op::MZ) n += ins.targets.size();
    return n;
}

size_t Circuit::num_moments() const {
    size_t ticks = 0;
    for (const auto& ins : instructions)
        if (ins.op == Op::TICK) ticks++;
    return ticks + 1;
}

size_t Circuit::num_detectors() const {
    size_t n = 0;
    for (const auto& ins : instructions)
        if (ins.op == Op::DETECTOR) n++;
    return n;
}

std::vector<std::vector<size_t>> Circuit::detector_defs() const {
    std::vector<std::vector<size_t>> defs;
    size_t seen = 0;
    for (const auto& ins : instructions) {
        if (ins.op == Op::MZ) {
            seen += ins.targets.size();
        } else if (ins.op == Op::DETECTOR) {
            std::vector<size_t> members;
            for (int32_t off : ins.rec) members.push_back(seen + off);
            defs.push_back(std::move(members));
        }
    }
    return defs;
}

std::vector<size_t> Circuit::observable_def() const {
    std::set<size_t> members;
    size_t seen = 0;
    for (const auto& ins : instructions) {
        if (ins.op == Op::MZ) {
            seen += ins.targets.size();
        } else if (ins.op == Op::OBSERVABLE_INCLUDE) {
            for (int32_t off : ins.rec) {
                size_t idx = seen + off;
                // XOR semantics: referencing a record twice cancels.
                if (!members.insert(idx).second) members.erase(idx);
            }
        }
    }
    return {members.begin(), members.end()};
}

void Circuit::validate() const {
    auto fail = [](const std::string& msg) { throw std::runtime_error("circuit: " + msg); };
    if (!coords.empty() && coords.size() != num_qubits) fail("coords size mismatch");

    std::set<uint32_t> moment_used;      // gate targets seen in the current moment
    std::set<uint32_t> moment_measured;  // MZ targets: may still take an RZ (measure+reset)
    std::set<uint32_t> herald_pending;
    size_t seen = 0;
    size_t index = 0;
    for (const auto& ins : instructions) {
        for (uint32_t t : ins.targets)
            if (t >= num_qubits) fail("target out of range at instruction " + std::to_string(index));
        for (double a : ins.args)
            if (!(a >= 0.0 && a <= 1.0)) fail("probability out of [0,1] at instruction " + std::to_string(index));

        switch (ins.op) {
            case Op::TICK:
                if (!herald_pending.empty()) fail("HERALD_ERR without matching MZ in its moment");
                moment_used.clear();
                moment_measured.clear();
                break;
            case Op::H:
            case Op::RZ:
            case Op::MZ:
            case Op::CZ: {
                if (ins.op == Op::CZ && ins.targets.size() % 2 != 0) fail("CZ needs target pairs");
                std::set<uint32_t> mine(ins.targets.begin(), ins.targets.end());
                if (mine.size() != ins.targets.size()) fail("repeated target within instruction " + std::to_string(index));
                for (uint32_t t : ins.targets) {
                    // An RZ may follow an MZ of the same qubit within one
                    // moment: that is the combined measure+reset operation.
                    if (ins.op == Op::RZ && moment_measured.erase(t)) continue;
                    if (!moment_used.insert(t).second)
                        fail("qubit " + std::to_string(t) + " used twice in one moment");
                }
                if (ins.op == Op::MZ) {
                    if (ins.args.size() > 1) fail("MZ takes at most one argument");
                    seen += ins.targets.size();
                    for (uint32_t t : ins.targets) {
                        herald_pending.erase(t);
                        moment_measured.insert(t);
                    }
                }
                break;
            }
            case Op::HERALD_ERR:
                if (ins.args.size() != 1) fail("HERALD_ERR needs exactly one argument");
                for (uint32_t t : ins.targets) herald_pending.insert(t);
                break;
            case Op::DEPOLARIZE1:
            case Op::LEAK:
            case Op::RELAX:
                if (ins.args.size() != 1) fail(std::string(op_name(ins.op)) + " needs exactly one argument");
                break;
            case Op::DEPOLARIZE2:
                if (ins.args.size() != 1) fail("DEPOLARIZE2 needs exactly one argument");
                if (ins.targets.size() % 2 != 0) fail("DEPOLARIZE2 needs target pairs");
                break;
            case Op::DETECTOR:
            case Op::OBSERVABLE_INCLUDE:
                if (ins.rec.empty()) fail("record annotation without references");
                for (int32_t off : ins.rec) {
                    if (off >= 0) fail("record offsets must be negative");
                    if (static_cast<size_t>(-off) > seen) fail("record reference before any such measurement");
                }
                break;
        }
        index++;
    }
    if (!herald_pending.empty()) fail("HERALD_ERR without matching MZ in its moment");
}

static void print_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Trim to the shortest representation that round-trips.
    for (int prec = 1; prec < 17; prec++) {
        char probe[64];
        std::snprintf(probe, sizeof probe, "%.*g", prec, v);
        double back;
        std::sscanf(probe, "%lf", &back);
        if (back == v) {
            out += probe;
            return;
        }
    }
    out += buf;
}

std::string Circuit::to_text() const {
    std::string out;
    out += "# qubits: " + std::to_string(num_qubits) + "\n";
    if (distance > 0) out += "# distance: " + std::to_string(distance) + "\n";
    if (rounds > 0) out += "# rounds: " + std::to_string(rounds) + "\n";
    for (size_t q = 0; q < coords.size(); q++)
        out += "# coord " + std::to_string(q) + ": " + std::to_string(coords[q].first) + " " +
               std::to_string(coords[q].second) + "\n";
    for (const auto& ins : instructions) {
        out += op_name(ins.op);
        if (!ins.args.empty()) {
            out += '(';
            for (size_t i = 0; i < ins.args.size(); i++) {
                if (i) out += ", ";
                print_double(out, ins.args[i]);
            }
            out += ')';
        }
        for (uint32_t t : ins.targets) out += ' ' + std::to_string(t);
        for (int32_t r : ins.rec) out += " rec[" + std::to_string(r) + "]";
        out += '\n';
    }
    return out;
}

Circuit Circuit::from_text(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        lineno++;
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        line = line.substr(a);
        if (line[0] == '#') {
            unsigned q, x;
            int xv, yv;
            if (std::sscanf(line.c_str(), "# qubits: %u", &q) == 1) {
                c.num_qubits = q;
            } else if (std::sscanf(line.c_str(), "# distance: %u", &q) == 1) {
                c.distance = static_cast<int>(q);
            } else if (std::sscanf(line.c_str(), "# rounds: %u", &q) == 1) {
                c.rounds = static_cast<int>(q);
            } else if (std::sscanf(line.c_str(), "# coord %u: %d %d", &x, &xv, &yv) == 3) {
                if (c.coords.size() != x) fail("coord lines out of order");
                c.coords.emplace_back(xv, yv);
            }
            continue;
        }
        Instruction ins;
        size_t pos = line.find_first_of(" (");
        std::string name = line.substr(0, pos);
        bool known = false;
        for (Op op : {Op::H, Op::CZ, Op::RZ, Op::MZ, Op::DEPOLARIZE1, Op::DEPOLARIZE2, Op::LEAK, Op::RELAX,
                      Op::HERALD_ERR, Op::DETECTOR, Op::OBSERVABLE_INCLUDE, Op::TICK}) {
            if (name == op_name(op)) {
                ins.op = op;
                known = true;
                break;
            }
        }
        if (!known) fail("unknown instruction '" + name + "'");
        size_t i = (pos == std::string::npos) ? line.size() : pos;
        if (i < line.size() && line[i] == '(') {
            size_t close = line.find(')', i);
            if (close == std::string::npos) fail("unterminated argument list");
            std::string argstr = line.substr(i + 1, close - i - 1);
            std::istringstream as(argstr);
            std::string tok;
            while (std::getline(as, tok, ',')) {
                try {
                    ins.args.push_back(std::stod(tok));
                } catch (...) {
                    fail("bad argument '" + tok + "'");
                }
            }
            i = close + 1;
        }
        std::istringstream ts(line.substr(i));
        std::string tok;
        while (ts >> tok) {
            if (tok.rfind("rec[", 0) == 0) {
                if (ins.op != Op::DETECTOR && ins.op != Op::OBSERVABLE_INCLUDE)
                    fail("record token on non-annotation instruction");
                if (tok.back() != ']') fail("bad record token '" + tok + "'");
                try {
                    ins.rec.push_back(std::stoi(tok.substr(4, tok.size() - 5)));
                } catch (...) {
                    fail("bad record token '" + tok + "'");
                }
            } else {
                try {
                    ins.targets.push_back(static_cast<uint32_t>(std::stoul(tok)));
                } catch (...) {
                    fail("bad target '" + tok + "'");
                }
            }
        }
        c.instructions.push_back(std::move(ins));
    }
    return c;
}

}  // namespace lcd
