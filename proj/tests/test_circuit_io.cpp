#include "abelsim/circuit_io.hpp"

#include "abelsim/sampler.hpp"
#include "abelsim/stabilizer.hpp"
#include "abelsim/support.hpp"

#include <gtest/gtest.h>

#include <string>

namespace abelsim {
namespace {

const char *kBellCircuit = R"({
  "group": [{"ZN": 2}, {"ZN": 2}],
  "input": [0, 0],
  "gates": [
    {"fourier": [0]},
    {"automorphism": [["1", "0"], ["1", "1"]]}
  ],
  "sampling": {"epsilon": "1/8", "count": 50, "seed": 11}
})";

TEST(CircuitIo, ParsesFullCircuit) {
    CircuitFile f = parse_circuit_file(std::string(kBellCircuit));
    EXPECT_EQ(f.circuit.group.str(), "Z_2 x Z_2");
    EXPECT_EQ(f.circuit.input, (RatVec{Rat(0), Rat(0)}));
    ASSERT_EQ(f.circuit.gates.size(), 2u);
    EXPECT_EQ(f.circuit.gates[0].kind, GateKind::Fourier);
    EXPECT_EQ(f.circuit.gates[1].kind, GateKind::Automorphism);
    ASSERT_TRUE(f.sampling.has_value());
    EXPECT_EQ(f.sampling->epsilon, Rat(1, 8));
    EXPECT_EQ(f.sampling->count, Int(50));
    EXPECT_EQ(f.sampling->seed, 11u);
    EXPECT_NO_THROW(validate_circuit(f.circuit));
}

TEST(CircuitIo, GateGroupsFollowTheChain) {
    // The automorphism in gate position 1 acts on the group after the
    // Fourier flip Z -> T.
    const char *text = R"({
      "group": ["Z"],
      "input": [0],
      "gates": [{"fourier": [0]}, {"automorphism": [["1"]]}]
    })";
    CircuitFile f = parse_circuit_file(std::string(text));
    EXPECT_EQ(f.circuit.gates[1].group().str(), "T");
    EXPECT_NO_THROW(validate_circuit(f.circuit));
}

TEST(CircuitIo, RoundTripPreservesSemantics) {
    CircuitFile f = parse_circuit_file(std::string(kBellCircuit));
    Json serialized = circuit_to_json(f.circuit);
    CircuitFile again = parse_circuit_file(serialized);
    EXPECT_EQ(again.circuit.group, f.circuit.group);
    EXPECT_EQ(again.circuit.input, f.circuit.input);
    ASSERT_EQ(again.circuit.gates.size(), f.circuit.gates.size());
    for (size_t t = 0; t < f.circuit.gates.size(); t++) {
        EXPECT_EQ(again.circuit.gates[t].kind, f.circuit.gates[t].kind);
    }
    EXPECT_EQ(again.circuit.gates[1].automorphism->mat, f.circuit.gates[1].automorphism->mat);
    // Non-reduced rationals re-reduce to the same value.
    CircuitFile reduced = parse_circuit_file(std::string(
        R"({"group": ["T"], "input": ["2/4"], "gates": []})"));
    EXPECT_EQ(reduced.circuit.input[0], Rat(1, 2));
}

TEST(CircuitIo, SerializationEmitsRationalStrings) {
    CircuitFile f = parse_circuit_file(std::string(kBellCircuit));
    Json j = circuit_to_json(f.circuit);
    EXPECT_TRUE(j["input"][0].is_string());
    EXPECT_TRUE(j["gates"][1]["automorphism"][0][0].is_string());
    EXPECT_EQ(rational_string(Rat(-3, 6)), "-1/2");
    EXPECT_EQ(rational_string(Rat(5)), "5");
}

TEST(CircuitIo, MalformedRationalReportsLocation) {
    const char *text = R"({"group": ["T"], "input": ["1/0"], "gates": []})";
    try {
        parse_circuit_file(std::string(text));
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.location, "/input/0");
        EXPECT_NE(std::string(e.what()).find("zero denominator"), std::string::npos);
    }
}

TEST(CircuitIo, RejectsMalformedDocuments) {
    EXPECT_THROW(parse_circuit_file(std::string("{not json")), ParseError);
    EXPECT_THROW(parse_circuit_file(std::string(R"({"group": ["Q"], "input": [], "gates": []})")),
                 ParseError);
    EXPECT_THROW(parse_circuit_file(std::string(R"({"group": ["T"], "input": [0.5], "gates": []})")),
                 ParseError);
    EXPECT_THROW(
        parse_circuit_file(std::string(R"({"group": ["T"], "input": [0], "gatez": []})")),
        ParseError);
    EXPECT_THROW(parse_circuit_file(std::string(
                     R"({"group": ["T"], "input": [0], "gates": [{"fourier": [0], "x": 1}]})")),
                 ParseError);
    EXPECT_THROW(parse_circuit_file(std::string(
                     R"({"group": ["T"], "input": [0], "gates": [{"automorphism": [["1"], ["2", "3"]]}]})")),
                 ParseError);
}

TEST(CircuitIo, InvalidGateDataIsAValidationError) {
    // A quadratic part that is not a representation fails at construction,
    // not at the JSON layer.
    const char *quad = R"({
      "group": [{"ZN": 2}],
      "input": [0],
      "gates": [{"quadratic": {"M": [["1/3"]], "v": ["0"]}}]
    })";
    EXPECT_THROW(parse_circuit_file(std::string(quad)), std::invalid_argument);

    // An automorphism with a non-integer entry into a discrete factor parses
    // but fails circuit validation with the violated condition named.
    const char *bad_auto = R"({
      "group": [{"ZN": 4}],
      "input": [0],
      "gates": [{"automorphism": [["1/2"]]}]
    })";
    CircuitFile f = parse_circuit_file(std::string(bad_auto));
    try {
        validate_circuit(f.circuit);
        FAIL() << "expected validation error";
    } catch (const RepError &e) {
        EXPECT_NE(std::string(e.what()).find("NonIntegerRow"), std::string::npos);
    }
}

TEST(CircuitIo, SamplingDefaults) {
    CircuitFile f = parse_circuit_file(std::string(
        R"({"group": ["T"], "input": [0], "gates": [], "sampling": {}})"));
    ASSERT_TRUE(f.sampling.has_value());
    EXPECT_EQ(f.sampling->epsilon, Rat(1, 64));
    EXPECT_EQ(f.sampling->count, Int(1000));
    EXPECT_EQ(f.sampling->seed, 0u);
    EXPECT_TRUE(f.sampling->deltas.empty());

    CircuitFile none = parse_circuit_file(std::string(
        R"({"group": ["T"], "input": [0], "gates": []})"));
    EXPECT_FALSE(none.sampling.has_value());
}

TEST(CircuitIo, ResultSerializers) {
    CircuitFile f = parse_circuit_file(std::string(kBellCircuit));
    SupportDesc sd = support(simulate(f.circuit));
    Json sj = support_to_json(sd);
    EXPECT_EQ(sj["x0"], Json::array({"0", "0"}));
    EXPECT_EQ(sj["h_domain"], Json::array({"Z"}));

    NetSpec net = build_net(sd.e_h, f.sampling->epsilon, f.sampling->deltas, sd.x0);
    Json nj = net_to_json(net);
    EXPECT_EQ(nj["free_rank"], 0);
    EXPECT_EQ(nj["point_count"], "2");
    EXPECT_EQ(nj["compact_orders"], Json::array({"2"}));

    Json s = sample_to_json({Rat(1), Rat(1, 2)});
    EXPECT_EQ(s.dump(), R"({"sample":["1","1/2"]})");
}

}  // namespace
}  // namespace abelsim
