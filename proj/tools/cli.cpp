#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "csmooth/circuit_io.hpp"
#include "csmooth/generators.hpp"
#include "csmooth/inference.hpp"
#include "csmooth/rangesum.hpp"
#include "csmooth/semiring.hpp"
#include "csmooth/smoothing.hpp"
#include "csmooth/transform.hpp"
#include "csmooth/validate.hpp"

namespace csmooth_cli {

namespace {

using namespace csmooth;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Flat `key value` report accumulated during a run and flushed on every
// path, success or failure.
struct Report {
    std::vector<std::pair<std::string, std::string>> lines;

    void add(const std::string& key, const std::string& value) { lines.push_back({key, value}); }
    void add(const std::string& key, double value) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", value);
        add(key, std::string(buf));
    }
    void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
    void flush(int exit_code) const {
        for (const auto& [k, v] : lines) std::cout << k << ' ' << v << '\n';
        std::cout << "exit " << exit_code << '\n';
    }
};

Circuit read_circuit(const std::string& path) {
    if (path == "-") return parse_circuit(std::cin);
    return load_circuit_file(path);
}

void write_circuit(const Circuit& c, const std::string& path) {
    if (path == "-") serialize_circuit(c, std::cout);
    else save_circuit_file(c, path);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class S>
std::string display_value(const typename S::Value& v) {
    if constexpr (std::is_same_v<typename S::Value, double>) return fmt_double(v);
    else return v.str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string assignment_string(const std::vector<bool>& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ' ';
        s += a[i] ? std::to_string(i + 1) : ("-" + std::to_string(i + 1));
    }
    return s;
}

template <class S>
LiteralWeights<S> weights_for(const std::string& path, std::uint32_t num_vars) {
    if (path.empty()) return LiteralWeights<S>(num_vars);
    WeightTable table = load_weights_file(path, num_vars);
    std::size_t missing = table.missing_count();
    if (missing > 0)
        std::cerr << "note: " << missing << " literal weights missing, defaulted to one\n";
    return table.convert<S>();
}

int cmd_check(const std::string& circuit_path, const std::string& vtree_path,
              const std::string& props_csv, const std::string& against_path) {
    Report report;
    report.add("command", std::string("check"));
    Circuit c = read_circuit(circuit_path);
    report.add("num_vars", std::size_t(c.num_vars()));
    report.add("num_gates", c.num_gates());
    report.add("num_edges", c.num_edges());
    bool any_violation = false;
    for (const std::string& prop : split_list(props_csv)) {
        if (prop == "decomposable") {
            auto r = check_decomposable(c);
            if (r.ok) report.add("decomposable", std::string("ok"));
            else {
                report.add("decomposable", "violation gate=" + std::to_string(r.gate) +
                                               " var=" + std::to_string(r.shared_var));
                any_violation = true;
            }
        } else if (prop == "smooth") {
            auto r = check_smooth(c);
            if (r.ok) report.add("smooth", std::string("ok"));
            else {
                report.add("smooth", "violation gate=" + std::to_string(r.gate) + " children=" +
                                         std::to_string(r.child_a) + "," +
                                         std::to_string(r.child_b));
                any_violation = true;
            }
        } else if (prop == "deterministic") {
            auto r = check_deterministic(c);
            if (r.ok) report.add("deterministic", std::string("ok"));
            else {
                report.add("deterministic", "violation gate=" + std::to_string(r.gate) +
                                                " assignment=" + assignment_string(r.witness));
                any_violation = true;
            }
        } else if (prop == "structured") {
            if (vtree_path.empty()) throw CLI::ValidationError("--props structured needs -v");
            Vtree v = load_vtree_file(vtree_path);
            auto r = infer_structure_map(normalize(c), v);
            if (r.ok) report.add("structured", std::string("ok"));
            else {
                report.add("structured", "violation gate=" + std::to_string(r.offending_gate) +
                                             " (" + r.reason + ")");
                any_violation = true;
            }
        } else {
            throw CLI::ValidationError("unknown property '" + prop + "'");
        }
    }
    if (!against_path.empty()) {
        Circuit other = read_circuit(against_path);
        auto r = check_equivalent(c, other);
        if (r.ok) report.add("equivalent", std::string("ok"));
        else {
            report.add("equivalent",
                       "counterexample " + assignment_string(r.counterexample));
            any_violation = true;
        }
    }
    int code = any_violation ? 1 : 0;
    report.flush(code);
    return code;
}

int cmd_smooth(const std::string& method_name, const std::string& circuit_path,
               const std::string& vtree_path, const std::string& out_path) {
    Report report;
    report.add("command", std::string("smooth"));
    report.add("method", method_name);
    SmoothMethod method;
    if (method_name == "naive") method = SmoothMethod::Naive;
    else if (method_name == "rangesum") method = SmoothMethod::RangeSum;
    else if (method_name == "structured") method = SmoothMethod::Structured;
    else throw CLI::ValidationError("unknown smoothing method '" + method_name + "'");

    auto t0 = Clock::now();
    Circuit c = read_circuit(circuit_path);
    Vtree v = load_vtree_file(vtree_path);
    report.add("num_vars", std::size_t(c.num_vars()));
    report.add("input_gates", c.num_gates());
    report.add("input_edges", c.num_edges());
    report.add("load_ms", ms_since(t0));

    auto t1 = Clock::now();
    Circuit prepared = normalize(c);
    report.add("normalize_ms", ms_since(t1));

    auto t2 = Clock::now();
    SmoothResult result = smooth(prepared, v, method);
    report.add("added_gates", result.stats.added_gates);
    report.add("added_edges", result.stats.added_edges);
    report.add("trace_additions", result.stats.trace_additions);
    report.add("gap_sites", result.stats.gap_sites);
    report.add("output_gates", result.circuit.num_gates());
    report.add("output_edges", result.circuit.num_edges());
    report.add("wall_ms", ms_since(t2));
    write_circuit(result.circuit, out_path);
    report.flush(0);
    return 0;
}

int cmd_amc(const std::string& circuit_path, const std::string& weights_path,
            const std::string& semiring_name) {
    Report report;
    report.add("command", std::string("amc"));
    report.add("semiring", semiring_name);
    Circuit c = read_circuit(circuit_path);
    report.add("num_vars", std::size_t(c.num_vars()));
    report.add("num_edges", c.num_edges());
    auto t0 = Clock::now();
    with_semiring(semiring_from_name(semiring_name), [&](auto tag) {
        using S = decltype(tag);
        auto w = weights_for<S>(weights_path, c.num_vars());
        auto r = amc_eval<S>(c, w);
        report.add("value", display_value<S>(r.value));
        report.add("op_count", r.op_count);
    });
    report.add("wall_ms", ms_since(t0));
    report.flush(0);
    return 0;
}

int cmd_marginals(const std::string& circuit_path, const std::string& vtree_path,
                  const std::string& weights_path, const std::string& method,
                  const std::string& semiring_name, bool print_derivatives) {
    Report report;
    report.add("command", std::string("marginals"));
    report.add("method", method);
    report.add("semiring", semiring_name);
    Circuit c = normalize(read_circuit(circuit_path));
    Vtree v = load_vtree_file(vtree_path);
    report.add("num_vars", std::size_t(c.num_vars()));
    report.add("num_edges", c.num_edges());
    auto t0 = Clock::now();
    SemiringName name = semiring_from_name(semiring_name);
    if (method == "direct" && name != SemiringName::Prob && name != SemiringName::LogProb)
        throw CLI::ValidationError("marginals --method direct needs a semiring with division");

    with_semiring(name, [&](auto tag) {
        using S = decltype(tag);
        if constexpr (S::has_division) {
            auto w = weights_for<S>(weights_path, c.num_vars());
            MarginalResult<S> r = method == "direct"
                                      ? all_marginals_direct<S>(c, v, w)
                                      : all_marginals_via_smoothing<S>(c, v, w);
            report.add("s", display_value<S>(r.s));
            report.add("op_count", r.op_count);
            if (print_derivatives) {
                for (VarId x = 1; x <= c.num_vars(); ++x) {
                    report.add("d " + std::to_string(x), display_value<S>(r.d_pos[x]));
                    report.add("d -" + std::to_string(x), display_value<S>(r.d_neg[x]));
                }
            }
        } else {
            auto w = weights_for<S>(weights_path, c.num_vars());
            MarginalResult<S> r = all_marginals_via_smoothing<S>(c, v, w);
            report.add("s", display_value<S>(r.s));
            report.add("op_count", r.op_count);
            if (print_derivatives) {
                for (VarId x = 1; x <= c.num_vars(); ++x) {
                    report.add("d " + std::to_string(x), display_value<S>(r.d_pos[x]));
                    report.add("d -" + std::to_string(x), display_value<S>(r.d_neg[x]));
                }
            }
        }
    });
    report.add("wall_ms", ms_since(t0));
    report.flush(0);
    return 0;
}

int cmd_gen(const std::string& family, std::uint32_t n, std::uint32_t m, std::uint64_t seed,
            bool deterministic, const std::string& dir) {
    Report report;
    report.add("command", std::string("gen"));
    report.add("family", family);
    std::string base = dir + "/" + family + "_n" + std::to_string(n) + "_m" + std::to_string(m) +
                       "_s" + std::to_string(seed);
    GeneratedInstance inst;
    bool has_vtree = true;
    if (family == "worstcase") {
        inst = gen_worstcase(n, m, seed);
    } else if (family == "chain") {
        inst = gen_chain_random(n, m, seed);
        has_vtree = false;
    } else if (family == "random") {
        inst = gen_random_structured(n, m, seed, deterministic);
    } else {
        throw CLI::ValidationError("unknown family '" + family + "'");
    }
    save_circuit_file(inst.circuit, base + ".lc");
    report.add("circuit", base + ".lc");
    if (has_vtree) {
        save_vtree_file(inst.vtree, base + ".vt");
        report.add("vtree", base + ".vt");
    }
    report.add("num_vars", std::size_t(inst.circuit.num_vars()));
    report.add("num_gates", inst.circuit.num_gates());
    report.add("num_edges", inst.circuit.num_edges());
    report.add("deterministic", std::string(inst.deterministic ? "true" : "false"));
    report.flush(0);
    return 0;
}

int cmd_bench(const std::string& family, const std::string& sizes_csv, std::uint64_t seed) {
    if (family != "worstcase") throw CLI::ValidationError("bench supports --family worstcase");
    std::cout << "# n m_edges naive_added_edges rangesum_added_edges trace_additions"
                 " naive_ms rangesum_ms\n";
    for (const std::string& item : split_list(sizes_csv)) {
        std::size_t target = std::stoull(item);
        WorstcaseLadderPoint p = worstcase_ladder_point(target);
        GeneratedInstance inst = gen_worstcase(p.n, p.m, seed);
        auto t0 = Clock::now();
        SmoothResult naive = smooth_naive(inst.circuit, inst.vtree);
        double naive_ms = ms_since(t0);
        auto t1 = Clock::now();
        SmoothResult fast = smooth_rangesum(inst.circuit, inst.vtree);
        double fast_ms = ms_since(t1);
        char row[256];
        std::snprintf(row, sizeof row, "%u %zu %zu %zu %zu %.3f %.3f", p.n,
                      inst.circuit.num_edges(), naive.stats.added_edges, fast.stats.added_edges,
                      fast.stats.trace_additions, naive_ms, fast_ms);
        std::cout << row << '\n' << std::flush;
    }
    return 0;
}

int cmd_trace(std::uint32_t n, const std::string& intervals_csv, bool naive) {
    std::vector<IntervalQuery> queries;
    for (const std::string& item : split_list(intervals_csv)) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("intervals must look like lo:hi,lo:hi");
        queries.push_back({static_cast<std::uint32_t>(std::stoul(item.substr(0, colon))),
                           static_cast<std::uint32_t>(std::stoul(item.substr(colon + 1)))});
        if (queries.back().lo < 1 || queries.back().hi > n || queries.back().empty())
            throw CLI::ValidationError("interval out of range: " + item);
    }
    AdditionTrace trace =
        naive ? naive_trace(n, queries) : build_trace(n, queries, nullptr);
    dump_trace(trace, std::cout);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"structured-circuit smoothing and inference toolkit"};
    app.require_subcommand(1);

    std::string circuit_path, vtree_path, out_path = "-", against_path, weights_path;
    std::string props = "decomposable,smooth";
    std::string smooth_method = "rangesum", marg_method = "direct";
    std::string semiring = "prob", family = "worstcase", gen_dir = ".";
    std::string sizes = "40000,400000", intervals;
    std::uint32_t n = 0, m = 0;
    std::uint64_t seed = 1;
    bool deterministic = false, naive = false, no_derivatives = false;

    auto* check = app.add_subcommand("check", "validate circuit properties");
    check->add_option("-c,--circuit", circuit_path)->required();
    check->add_option("-v,--vtree", vtree_path);
    check->add_option("--props", props, "comma list: decomposable,smooth,deterministic,structured");
    check->add_option("--against", against_path, "second circuit for equivalence");

    auto* smooth_cmd = app.add_subcommand("smooth", "smooth a structured circuit");
    smooth_cmd->add_option("--method", smooth_method, "naive|rangesum|structured");
    smooth_cmd->add_option("-c,--circuit", circuit_path)->required();
    smooth_cmd->add_option("-v,--vtree", vtree_path)->required();
    smooth_cmd->add_option("-o,--output", out_path, "output path, '-' for stdout");

    auto* amc = app.add_subcommand("amc", "algebraic model counting on a smooth circuit");
    amc->add_option("-c,--circuit", circuit_path)->required();
    amc->add_option("-w,--weights", weights_path);
    amc->add_option("--semiring", semiring, "prob|count|maxplus|logprob");

    auto* marg = app.add_subcommand("marginals", "all-marginals of the weighted circuit value");
    marg->add_option("-c,--circuit", circuit_path)->required();
    marg->add_option("-v,--vtree", vtree_path)->required();
    marg->add_option("-w,--weights", weights_path);
    marg->add_option("--method", marg_method, "direct|via-smoothing");
    marg->add_option("--semiring", semiring, "prob|logprob (direct needs division)");
    marg->add_flag("--no-derivatives", no_derivatives, "only report s and op_count");

    auto* gen = app.add_subcommand("gen", "write a generated circuit (and vtree) to files");
    gen->add_option("--family", family, "worstcase|chain|random");
    gen->add_option("--n", n)->required();
    gen->add_option("--m", m, "intervals (worstcase/chain) or target gates (random)")->required();
    gen->add_option("--seed", seed);
    gen->add_flag("--deterministic", deterministic, "random family: deterministic OR gates");
    gen->add_option("--dir", gen_dir, "output directory");

    auto* bench = app.add_subcommand("bench", "naive vs rangesum smoothing ladder");
    bench->add_option("--family", family);
    bench->add_option("--sizes", sizes, "target edge counts, comma separated");
    bench->add_option("--seed", seed);

    auto* trace = app.add_subcommand("trace", "dump an addition trace for interval queries");
    trace->add_option("--n", n)->required();
    trace->add_option("--intervals", intervals, "lo:hi,lo:hi")->required();
    trace->add_flag("--naive", naive, "chain per query instead of the shared scheme");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(circuit_path, vtree_path, props, against_path);
        if (smooth_cmd->parsed())
            return cmd_smooth(smooth_method, circuit_path, vtree_path, out_path);
        if (amc->parsed()) return cmd_amc(circuit_path, weights_path, semiring);
        if (marg->parsed())
            return cmd_marginals(circuit_path, vtree_path, weights_path, marg_method, semiring,
                                 !no_derivatives);
        if (gen->parsed()) return cmd_gen(family, n, m, seed, deterministic, gen_dir);
        if (bench->parsed()) return cmd_bench(family, sizes, seed);
        if (trace->parsed()) return cmd_trace(n, intervals, naive);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const csmooth::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const csmooth::StructureError& e) {
        std::cerr << "structure error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace csmooth_cli
