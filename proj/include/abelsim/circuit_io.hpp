#pragma once

// JSON circuit files and JSON serialization of results.
//
// Circuit schema (rationals are JSON integers or "p/q" strings; serialization
// always emits strings so values stay exact):
//
//   {
//     "group": ["Z", "T", {"ZN": 4}],
//     "input": ["0", "1/2", 3],
//     "gates": [
//       {"automorphism": [["1", "0"], ["1", "1"]]},
//       {"quadratic": {"M": [["1/2"]], "v": ["0"]}},
//       {"fourier": [0, 2]}
//     ],
//     "sampling": {"epsilon": "1/64", "delta": [10], "count": 1000, "seed": 7}
//   }
//
// Malformed documents (bad JSON, wrong types, malformed rationals, unknown
// keys) throw ParseError carrying a JSON-pointer-style location. Documents
// that parse but describe an invalid circuit (non-representation matrix,
// group mismatch, non-invertible automorphism) throw std::invalid_argument
// from the construction layer instead, so callers can distinguish the two
// failure classes.

#include "abelsim/circuit.hpp"
#include "abelsim/group.hpp"
#include "abelsim/homomorphism.hpp"
#include "abelsim/matrix.hpp"
#include "abelsim/quadratic.hpp"
#include "abelsim/rational.hpp"
#include "abelsim/sampler.hpp"
#include "abelsim/support.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abelsim {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    std::string location;

    ParseError(std::string loc, const std::string &message)
        : std::runtime_error(loc + ": " + message), location(std::move(loc)) {}
};

struct SamplingParams {
    Rat epsilon = Rat(1, 64);
    std::vector<Int> deltas;  // per free dimension; build_net pads with 10
    Int count = Int(1000);
    std::uint64_t seed = 0;
};

struct CircuitFile {
    Circuit circuit;
    std::optional<SamplingParams> sampling;
};

namespace io_detail {

inline Int parse_int_string(const std::string &s, const std::string &loc) {
    size_t pos = 0;
    if (pos < s.size() && s[pos] == '-') {
        pos++;
    }
    if (pos == s.size()) {
        throw ParseError(loc, "expected an integer, got \"" + s + "\"");
    }
    for (; pos < s.size(); pos++) {
        if (s[pos] < '0' || s[pos] > '9') {
            throw ParseError(loc, "expected an integer, got \"" + s + "\"");
        }
    }
    return Int(s);
}

inline Int parse_integer(const Json &j, const std::string &loc) {
    if (j.is_number_unsigned()) {
        return Int(j.get<unsigned long long>());
    }
    if (j.is_number_integer()) {
        return Int(j.get<long long>());
    }
    if (j.is_string()) {
        return parse_int_string(j.get<std::string>(), loc);
    }
    throw ParseError(loc, "expected an integer or integer string");
}

inline Rat parse_rational(const Json &j, const std::string &loc) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        return Rat(parse_integer(j, loc));
    }
    if (j.is_number_float()) {
        throw ParseError(loc, "floating point numbers are not accepted; use \"p/q\" strings");
    }
    if (!j.is_string()) {
        throw ParseError(loc, "expected a rational as integer or \"p/q\" string");
    }
    std::string s = j.get<std::string>();
    size_t slash = s.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int_string(s, loc));
    }
    Int p = parse_int_string(s.substr(0, slash), loc);
    std::string qs = s.substr(slash + 1);
    if (qs.empty() || qs[0] == '-') {
        throw ParseError(loc, "malformed rational \"" + s + "\": denominator must be positive");
    }
    Int q = parse_int_string(qs, loc);
    if (q == 0) {
        throw ParseError(loc, "malformed rational \"" + s + "\": zero denominator");
    }
    return Rat(p, q);
}

inline RatVec parse_rational_vector(const Json &j, const std::string &loc) {
    if (!j.is_array()) {
        throw ParseError(loc, "expected an array of rationals");
    }
    RatVec out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); i++) {
        out.push_back(parse_rational(j[i], loc + "/" + std::to_string(i)));
    }
    return out;
}

inline RatMat parse_rational_matrix(const Json &j, const std::string &loc) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(loc, "expected a non-empty array of rows");
    }
    std::vector<RatVec> rows;
    for (size_t i = 0; i < j.size(); i++) {
        rows.push_back(parse_rational_vector(j[i], loc + "/" + std::to_string(i)));
        if (rows.back().size() != rows[0].size()) {
            throw ParseError(loc + "/" + std::to_string(i), "rows differ in length");
        }
    }
    RatMat m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t k = 0; k < rows[i].size(); k++) {
            m.at(i, k) = rows[i][k];
        }
    }
    return m;
}

inline void require_keys(const Json &j, std::initializer_list<const char *> allowed,
                         const std::string &loc) {
    for (const auto &item : j.items()) {
        bool known = false;
        for (const char *k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(loc, "unknown key \"" + item.key() + "\"");
        }
    }
}

}  // namespace io_detail

inline GroupSpec parse_group(const Json &j, const std::string &loc) {
    if (!j.is_array()) {
        throw ParseError(loc, "expected an array of factors");
    }
    std::vector<PrimitiveFactor> factors;
    for (size_t i = 0; i < j.size(); i++) {
        std::string floc = loc + "/" + std::to_string(i);
        const Json &f = j[i];
        if (f.is_string()) {
            std::string s = f.get<std::string>();
            if (s == "Z") {
                factors.push_back(PrimitiveFactor::z());
            } else if (s == "T") {
                factors.push_back(PrimitiveFactor::t());
            } else if (s == "R") {
                factors.push_back(PrimitiveFactor::r());
            } else {
                throw ParseError(floc, "unknown factor \"" + s + "\" (expected Z, T, R or {\"ZN\": n})");
            }
        } else if (f.is_object() && f.contains("ZN") && f.size() == 1) {
            Int n = io_detail::parse_integer(f["ZN"], floc + "/ZN");
            if (n < 1) {
                throw ParseError(floc + "/ZN", "modulus must be at least 1");
            }
            factors.push_back(PrimitiveFactor::zn(n));
        } else {
            throw ParseError(floc, "expected \"Z\", \"T\", \"R\" or {\"ZN\": n}");
        }
    }
    return GroupSpec(std::move(factors));
}

// Parses one gate acting on the given group. Structural JSON problems throw
// ParseError; semantically invalid gate data throws std::invalid_argument.
inline Gate parse_gate(const Json &j, const GroupSpec &group, const std::string &loc) {
    if (!j.is_object() || j.size() != 1) {
        throw ParseError(loc, "expected exactly one of \"automorphism\", \"quadratic\", \"fourier\"");
    }
    if (j.contains("automorphism")) {
        RatMat m = io_detail::parse_rational_matrix(j["automorphism"], loc + "/automorphism");
        return Gate::make_automorphism(MatrixRep(group, group, std::move(m)));
    }
    if (j.contains("quadratic")) {
        const Json &q = j["quadratic"];
        if (!q.is_object()) {
            throw ParseError(loc + "/quadratic", "expected an object with keys M and v");
        }
        io_detail::require_keys(q, {"M", "v"}, loc + "/quadratic");
        if (!q.contains("M") || !q.contains("v")) {
            throw ParseError(loc + "/quadratic", "missing key M or v");
        }
        RatMat m = io_detail::parse_rational_matrix(q["M"], loc + "/quadratic/M");
        RatVec v = io_detail::parse_rational_vector(q["v"], loc + "/quadratic/v");
        return Gate::make_quadratic(make_quadratic(group, m, std::move(v)));
    }
    if (j.contains("fourier")) {
        const Json &regs = j["fourier"];
        if (!regs.is_array()) {
            throw ParseError(loc + "/fourier", "expected an array of register indices");
        }
        std::vector<size_t> registers;
        for (size_t i = 0; i < regs.size(); i++) {
            Int r = io_detail::parse_integer(regs[i], loc + "/fourier/" + std::to_string(i));
            if (r < 0) {
                throw ParseError(loc + "/fourier/" + std::to_string(i),
                                 "register index must be non-negative");
            }
            registers.push_back(r.convert_to<size_t>());
        }
        return Gate::make_fourier(group, std::move(registers));
    }
    throw ParseError(loc, "unknown gate tag; expected \"automorphism\", \"quadratic\" or \"fourier\"");
}

inline Circuit parse_circuit(const Json &j, const std::string &loc) {
    if (!j.is_object()) {
        throw ParseError(loc.empty() ? "/" : loc, "expected a JSON object");
    }
    io_detail::require_keys(j, {"group", "input", "gates", "sampling"}, loc.empty() ? "/" : loc);
    if (!j.contains("group") || !j.contains("input") || !j.contains("gates")) {
        throw ParseError(loc.empty() ? "/" : loc, "missing key: group, input and gates are required");
    }
    Circuit c;
    c.group = parse_group(j["group"], loc + "/group");
    c.input = io_detail::parse_rational_vector(j["input"], loc + "/input");
    const Json &gates = j["gates"];
    if (!gates.is_array()) {
        throw ParseError(loc + "/gates", "expected an array of gates");
    }
    GroupSpec current = c.group;
    for (size_t t = 0; t < gates.size(); t++) {
        Gate g = parse_gate(gates[t], current, loc + "/gates/" + std::to_string(t));
        current = g.group_after();
        c.gates.push_back(std::move(g));
    }
    return c;
}

inline SamplingParams parse_sampling(const Json &j, const std::string &loc) {
    if (!j.is_object()) {
        throw ParseError(loc, "expected an object");
    }
    io_detail::require_keys(j, {"epsilon", "delta", "count", "seed"}, loc);
    SamplingParams p;
    if (j.contains("epsilon")) {
        p.epsilon = io_detail::parse_rational(j["epsilon"], loc + "/epsilon");
    }
    if (j.contains("delta")) {
        const Json &d = j["delta"];
        if (!d.is_array()) {
            throw ParseError(loc + "/delta", "expected an array of integers");
        }
        for (size_t i = 0; i < d.size(); i++) {
            p.deltas.push_back(io_detail::parse_integer(d[i], loc + "/delta/" + std::to_string(i)));
        }
    }
    if (j.contains("count")) {
        p.count = io_detail::parse_integer(j["count"], loc + "/count");
        if (p.count < 0) {
            throw ParseError(loc + "/count", "count must be non-negative");
        }
    }
    if (j.contains("seed")) {
        Int s = io_detail::parse_integer(j["seed"], loc + "/seed");
        if (s < 0 || s > Int(UINT64_MAX)) {
            throw ParseError(loc + "/seed", "seed must fit in an unsigned 64-bit integer");
        }
        p.seed = s.convert_to<std::uint64_t>();
    }
    return p;
}

inline CircuitFile parse_circuit_file(const Json &j) {
    CircuitFile f;
    f.circuit = parse_circuit(j, "");
    if (j.is_object() && j.contains("sampling")) {
        f.sampling = parse_sampling(j["sampling"], "/sampling");
    }
    return f;
}

inline CircuitFile parse_circuit_file(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    return parse_circuit_file(j);
}

inline CircuitFile load_circuit_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path, "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit_file(buf.str());
}

// ---- serialization ----------------------------------------------------

inline std::string rational_string(const Rat &r) {
    if (den(r) == 1) {
        return num(r).str();
    }
    return num(r).str() + "/" + den(r).str();
}

inline Json group_to_json(const GroupSpec &g) {
    Json out = Json::array();
    for (const auto &f : g.factors) {
        switch (f.kind) {
            case FactorKind::Z:
                out.push_back("Z");
                break;
            case FactorKind::T:
                out.push_back("T");
                break;
            case FactorKind::R:
                out.push_back("R");
                break;
            case FactorKind::ZN:
                out.push_back(Json{{"ZN", f.modulus.str()}});
                break;
        }
    }
    return out;
}

inline Json vector_to_json(const RatVec &v) {
    Json out = Json::array();
    for (const Rat &x : v) {
        out.push_back(rational_string(x));
    }
    return out;
}

inline Json matrix_to_json(const RatMat &m) {
    Json out = Json::array();
    for (size_t i = 0; i < m.rows(); i++) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); j++) {
            row.push_back(rational_string(m.at(i, j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline Json circuit_to_json(const Circuit &c) {
    Json out;
    out["group"] = group_to_json(c.group);
    out["input"] = vector_to_json(c.input);
    Json gates = Json::array();
    for (const Gate &g : c.gates) {
        switch (g.kind) {
            case GateKind::Automorphism:
                gates.push_back(Json{{"automorphism", matrix_to_json(g.automorphism->mat)}});
                break;
            case GateKind::Quadratic:
                gates.push_back(Json{{"quadratic", Json{{"M", matrix_to_json(g.quadratic->m)},
                                                        {"v", vector_to_json(g.quadratic->v)}}}});
                break;
            case GateKind::Fourier: {
                Json regs = Json::array();
                for (size_t r : g.fourier_registers) {
                    regs.push_back(r);
                }
                gates.push_back(Json{{"fourier", std::move(regs)}});
                break;
            }
        }
    }
    out["gates"] = std::move(gates);
    return out;
}

inline Json support_to_json(const SupportDesc &sd) {
    Json out;
    out["group"] = group_to_json(sd.group);
    out["x0"] = vector_to_json(sd.x0);
    out["h_domain"] = group_to_json(sd.e_h.domain);
    out["h_matrix"] = matrix_to_json(sd.e_h.mat);
    return out;
}

inline Json net_to_json(const NetSpec &net) {
    Json orders = Json::array();
    for (const Int &s : net.compact_orders) {
        orders.push_back(s.str());
    }
    Json deltas = Json::array();
    for (const Int &d : net.deltas) {
        deltas.push_back(d.str());
    }
    Json out;
    out["epsilon"] = rational_string(net.eps);
    out["eps1"] = rational_string(net.eps1);
    out["free_rank"] = net.free_gens.size();
    out["compact_orders"] = std::move(orders);
    out["deltas"] = std::move(deltas);
    out["point_count"] = net.point_count().str();
    return out;
}

inline Json sample_to_json(const RatVec &x) { return Json{{"sample", vector_to_json(x)}}; }

}  // namespace abelsim
