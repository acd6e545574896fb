#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcd/circuit.hpp"

using namespace lcd;

static Circuit small_example() {
    Circuit c;
    c.num_qubits = 4;
    c.distance = 0;
    c.rounds = 2;
    c.coords = {{0, 0}, {1, 1}, {2, 0}, {3, 1}};
    c.append(Op::RZ, {0, 1, 2, 3});
    c.append(Op::LEAK, {0, 1, 2, 3}, {1e-4});
    c.tick();
    c.append(Op::H, {1, 3});
    c.append(Op::DEPOLARIZE1, {1, 3}, {1e-4});
    c.tick();
    c.append(Op::CZ, {0, 1, 2, 3});
    c.append(Op::DEPOLARIZE2, {0, 1, 2, 3}, {1e-3});
    c.tick();
    c.append(Op::HERALD_ERR, {1, 3}, {5e-3});
    {
        Instruction m;
        m.op = Op::MZ;
        m.targets = {1, 3};
        m.args = {5e-3};
        c.append(m);
    }
    c.append(Op::RZ, {1, 3});
    c.tick();
    {
        Instruction d;
        d.op = Op::DETECTOR;
        d.rec = {-2};
        c.append(d);
    }
    c.append(Op::MZ, {0, 2});
    {
        Instruction o;
        o.op = Op::OBSERVABLE_INCLUDE;
        o.rec = {-1, -2};
        c.append(o);
    }
    return c;
}

TEST_CASE("counting helpers") {
    Circuit c = small_example();
    CHECK(c.num_measurements() == 4);
    CHECK(c.num_moments() == 5);
    CHECK(c.num_detectors() == 1);
    c.validate();
}

TEST_CASE("record resolution") {
    Circuit c = small_example();
    auto defs = c.detector_defs();
    REQUIRE(defs.size() == 1);
    // DETECTOR rec[-2] sits after the first MZ pair: records 0,1 seen.
    CHECK(defs[0] == std::vector<size_t>{0});
    // Observable references the two final-readout records 2,3.
    CHECK(c.observable_def() == std::vector<size_t>{2, 3});
}

TEST_CASE("observable xor semantics cancels duplicates") {
    Circuit c;
    c.num_qubits = 1;
    c.append(Op::MZ, {0});
    Instruction o;
    o.op = Op::OBSERVABLE_INCLUDE;
    o.rec = {-1};
    c.append(o);
    c.append(o);
    CHECK(c.observable_def().empty());
}

TEST_CASE("text round trip") {
    Circuit c = small_example();
    std::string text = c.to_text();
    Circuit back = Circuit::from_text(text);
    CHECK(back == c);
    // Idempotent: serializing the parse gives identical bytes.
    CHECK(back.to_text() == text);
}

TEST_CASE("round trip preserves tiny probabilities exactly") {
    Circuit c;
    c.num_qubits = 2;
    c.append(Op::DEPOLARIZE1, {0}, {1.0000000000000001e-07});
    c.append(Op::DEPOLARIZE2, {0, 1}, {0.3333333333333333});
    Circuit back = Circuit::from_text(c.to_text());
    CHECK(back.instructions[0].args[0] == c.instructions[0].args[0]);
    CHECK(back.instructions[1].args[0] == c.instructions[1].args[0]);
}

TEST_CASE("validate rejects malformed circuits") {
    SUBCASE("target out of range") {
        Circuit c;
        c.num_qubits = 2;
        c.append(Op::H, {2});
        CHECK_THROWS(c.validate());
    }
    SUBCASE("qubit reused within a moment") {
        Circuit c;
        c.num_qubits = 3;
        c.append(Op::CZ, {0, 1});
        c.append(Op::H, {1});
        CHECK_THROWS(c.validate());
        c.instructions.clear();
        c.append(Op::CZ, {0, 1});
        c.tick();
        c.append(Op::H, {1});
        c.validate();  // separated by TICK: fine
    }
    SUBCASE("odd CZ target list") {
        Circuit c;
        c.num_qubits = 3;
        c.append(Op::CZ, {0, 1, 2});
        CHECK_THROWS(c.validate());
    }
    SUBCASE("probability out of range") {
        Circuit c;
        c.num_qubits = 1;
        c.append(Op::DEPOLARIZE1, {0}, {1.5});
        CHECK_THROWS(c.validate());
    }
    SUBCASE("record reference too deep") {
        Circuit c;
        c.num_qubits = 1;
        c.append(Op::MZ, {0});
        Instruction d;
        d.op = Op::DETECTOR;
        d.rec = {-2};
        c.append(d);
        CHECK_THROWS(c.validate());
    }
    SUBCASE("herald without a measurement in its moment") {
        Circuit c;
        c.num_qubits = 1;
        c.append(Op::HERALD_ERR, {0}, {0.1});
        c.tick();
        c.append(Op::MZ, {0});
        CHECK_THROWS(c.validate());
    }
}

TEST_CASE("parser reports unknown instruction") {
    CHECK_THROWS(Circuit::from_text("FOO 1 2\n"));
    CHECK_THROWS(Circuit::from_text("MZ rec[3]\n"));
}
