// Command-line driver: parse a circuit file, run the stabilizer evolution,
// compute the support, and sample it through a (Delta, eps)-net.
//
// Exit codes: 0 success, 1 parse error, 2 validation error, 3 internal
// inconsistency, 4 oracle mismatch (oracle-check only).

#include "abelsim/circuit.hpp"
#include "abelsim/circuit_io.hpp"
#include "abelsim/oracle.hpp"
#include "abelsim/sampler.hpp"
#include "abelsim/stabilizer.hpp"
#include "abelsim/support.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace abelsim;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;
constexpr int kExitMismatch = 4;

struct SamplingFlags {
    std::string epsilon;
    std::string delta;
    std::int64_t count = -1;
    std::int64_t seed = -1;
};

Rat parse_rational_flag(const std::string &text, const std::string &flag) {
    try {
        return io_detail::parse_rational(Json(text), flag);
    } catch (const ParseError &) {
        throw std::invalid_argument(flag + ": malformed rational \"" + text + "\"");
    }
}

std::vector<Int> parse_delta_flag(const std::string &text, const std::string &flag) {
    std::vector<Int> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            out.push_back(io_detail::parse_int_string(item, flag));
        } catch (const ParseError &) {
            throw std::invalid_argument(flag + ": malformed integer \"" + item + "\"");
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

// File-level sampling block first, explicit flags on top, defaults last.
SamplingParams resolve_sampling(const CircuitFile &file, const SamplingFlags &flags) {
    SamplingParams p = file.sampling.value_or(SamplingParams{});
    if (!flags.epsilon.empty()) {
        p.epsilon = parse_rational_flag(flags.epsilon, "--epsilon");
    }
    if (!flags.delta.empty()) {
        p.deltas = parse_delta_flag(flags.delta, "--delta");
    }
    if (flags.count >= 0) {
        p.count = Int(flags.count);
    }
    if (flags.seed >= 0) {
        p.seed = static_cast<std::uint64_t>(flags.seed);
    }
    return p;
}

std::ostream &open_output(const std::string &out_path, std::ofstream &file_stream) {
    if (out_path.empty()) {
        return std::cout;
    }
    file_stream.open(out_path, std::ios::binary);
    if (!file_stream) {
        throw std::invalid_argument("--out: cannot open " + out_path + " for writing");
    }
    return file_stream;
}

int cmd_validate(const std::string &circuit_path) {
    CircuitFile file = load_circuit_file(circuit_path);
    std::vector<GroupSpec> chain = validate_circuit(file.circuit);
    std::string line;
    for (size_t t = 0; t < chain.size(); t++) {
        if (t > 0) {
            line += " -> ";
        }
        line += chain[t].str();
    }
    std::cout << line << "\n";
    return kExitOk;
}

int cmd_support(const std::string &circuit_path, const std::string &out_path) {
    CircuitFile file = load_circuit_file(circuit_path);
    validate_circuit(file.circuit);
    SupportDesc sd = support(simulate(file.circuit));
    std::ofstream fs;
    std::ostream &out = open_output(out_path, fs);
    out << support_to_json(sd).dump() << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string &circuit_path, const SamplingFlags &flags,
                 const std::string &out_path) {
    CircuitFile file = load_circuit_file(circuit_path);
    validate_circuit(file.circuit);
    SamplingParams params = resolve_sampling(file, flags);

    SupportDesc sd = support(simulate(file.circuit));
    NetSpec net = build_net(sd.e_h, params.epsilon, params.deltas, sd.x0);

    std::ofstream fs;
    std::ostream &out = open_output(out_path, fs);
    Json header;
    header["support"] = support_to_json(sd);
    header["net"] = net_to_json(net);
    out << header.dump() << "\n";

    NetSampler sampler(net, params.seed);
    for (Int i(0); i < params.count; i++) {
        out << sample_to_json(sampler.draw()).dump() << "\n";
    }
    return kExitOk;
}

// Critical value of the chi-square distribution by the Wilson-Hilferty cube
// approximation, at the upper tail probability matching z.
double chi_square_critical(double df, double z) {
    double t = 2.0 / (9.0 * df);
    double c = 1.0 - t + z * std::sqrt(t);
    return df * c * c * c;
}

int cmd_oracle_check(const std::string &circuit_path, std::int64_t samples, std::int64_t seed) {
    CircuitFile file = load_circuit_file(circuit_path);
    validate_circuit(file.circuit);
    if (!group_chain(file.circuit).back().is_finite()) {
        throw std::invalid_argument("oracle-check: circuit must end in a finite group");
    }

    DenseState dense = dense_run(file.circuit);
    std::vector<RatVec> oracle_points = dense_support(dense);
    std::set<RatVec> oracle_set(oracle_points.begin(), oracle_points.end());

    StabilizerDesc desc = simulate(file.circuit);
    SupportDesc sd = support(desc);
    std::set<RatVec> claimed;
    size_t order = desc.group.order().convert_to<size_t>();
    for (size_t idx = 0; idx < order; idx++) {
        RatVec x = dense_element(desc.group, idx);
        if (in_support(sd, x)) {
            claimed.insert(x);
        }
    }
    if (claimed != oracle_set) {
        for (const RatVec &x : claimed) {
            if (!oracle_set.count(x)) {
                std::cerr << "oracle mismatch: stabilizer support contains "
                          << vector_to_json(x).dump() << " but the dense oracle does not\n";
                return kExitMismatch;
            }
        }
        for (const RatVec &x : oracle_set) {
            if (!claimed.count(x)) {
                std::cerr << "oracle mismatch: dense support contains " << vector_to_json(x).dump()
                          << " but the stabilizer pipeline does not\n";
                return kExitMismatch;
            }
        }
    }

    // Frequencies over the (finite) support must be uniform: chi-square test
    // with upper tail probability 1e-4 (z = 3.719).
    NetSpec net = build_net(sd.e_h, Rat(1, 64), {}, sd.x0);
    std::map<RatVec, std::int64_t> counts;
    NetSampler sampler(net, seed < 0 ? 0 : static_cast<std::uint64_t>(seed));
    for (std::int64_t i = 0; i < samples; i++) {
        counts[sampler.draw()]++;
    }
    if (counts.size() != oracle_set.size()) {
        std::cerr << "oracle mismatch: sampler hit " << counts.size() << " of "
                  << oracle_set.size() << " support points\n";
        return kExitMismatch;
    }
    for (const auto &[x, n] : counts) {
        (void)n;
        if (!oracle_set.count(x)) {
            std::cerr << "oracle mismatch: sampled point " << vector_to_json(x).dump()
                      << " lies outside the dense support\n";
            return kExitMismatch;
        }
    }
    size_t cells = oracle_set.size();
    if (cells > 1 && samples > 0) {
        double expected = static_cast<double>(samples) / static_cast<double>(cells);
        double stat = 0.0;
        for (const auto &[x, n] : counts) {
            (void)x;
            double d = static_cast<double>(n) - expected;
            stat += d * d / expected;
        }
        double crit = chi_square_critical(static_cast<double>(cells - 1), 3.719);
        if (stat > crit) {
            std::cerr << "oracle mismatch: chi-square statistic " << stat
                      << " exceeds critical value " << crit << " at " << cells - 1
                      << " degrees of freedom\n";
            return kExitMismatch;
        }
    }
    std::cout << "oracle check passed: " << oracle_set.size() << " support points, " << samples
              << " samples\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact stabilizer simulator for normalizer circuits over elementary Abelian groups"};
    app.require_subcommand(1);

    std::string circuit_path;
    std::string out_path;
    SamplingFlags flags;
    std::int64_t samples = 10000;

    CLI::App *simulate_cmd =
        app.add_subcommand("simulate", "Run a circuit, print support and net samples");
    simulate_cmd->add_option("--circuit", circuit_path, "Circuit JSON file")->required();
    simulate_cmd->add_option("--epsilon", flags.epsilon, "Net covering radius as P/Q (default 1/64)");
    simulate_cmd->add_option("--delta", flags.delta, "Free-direction ranges D1,D2,... (default 10)");
    simulate_cmd->add_option("--count", flags.count, "Number of samples (default 1000)");
    simulate_cmd->add_option("--seed", flags.seed, "PRNG seed (default 0)");
    simulate_cmd->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App *validate_cmd =
        app.add_subcommand("validate", "Check a circuit file and print its group chain");
    validate_cmd->add_option("--circuit", circuit_path, "Circuit JSON file")->required();

    CLI::App *support_cmd =
        app.add_subcommand("support", "Print the support description of the output state");
    support_cmd->add_option("--circuit", circuit_path, "Circuit JSON file")->required();
    support_cmd->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App *oracle_cmd = app.add_subcommand(
        "oracle-check", "Compare the stabilizer pipeline against the dense oracle");
    oracle_cmd->add_option("--circuit", circuit_path, "Circuit JSON file")->required();
    oracle_cmd->add_option("--samples", samples, "Sample count for the uniformity test");
    oracle_cmd->add_option("--seed", flags.seed, "PRNG seed (default 0)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed()) {
            return cmd_simulate(circuit_path, flags, out_path);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(circuit_path);
        }
        if (support_cmd->parsed()) {
            return cmd_support(circuit_path, out_path);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle_check(circuit_path, samples, flags.seed);
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InternalInconsistency &e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
