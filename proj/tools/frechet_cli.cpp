// Command line front end: decide / approx / exact / simplify / packedness /
// generate / bench over curve files (CSV or JSON).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "frechet/decider.hpp"
#include "frechet/exact.hpp"
#include "frechet/io.hpp"
#include "frechet/optimizer.hpp"
#include "frechet/packedness.hpp"
#include "frechet/simplification.hpp"

namespace {

using frechet::Curve;
using json = nlohmann::json;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::domain_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Curve load_curve(const std::string& path, const std::string& format_flag) {
    frechet::CurveFormat fmt = frechet::format_from_path(path);
    if (format_flag == "csv") fmt = frechet::CurveFormat::kCsv;
    if (format_flag == "json") fmt = frechet::CurveFormat::kJson;
    return frechet::parse_curve_file(path, fmt);
}

json curve_input_json(const std::string& path) {
    return json{{"path", path}, {"digest", frechet::fnv1a_hex(slurp(path))}};
}

void emit(const frechet::RunReport& report, bool as_json, const std::string& report_path,
          const std::string& human_line) {
    if (as_json) {
        std::cout << report.to_json();
    } else {
        std::cout << human_line << "\n";
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw std::domain_error("cannot write report: " + report_path);
        out << report.to_json();
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::domain_error("cannot write file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(1+eps)-approximate Frechet distance for packed polygonal curves"};
    app.require_subcommand(1);

    std::string format_flag;
    app.add_option("--format", format_flag, "Force curve file format (csv|json)")
        ->check(CLI::IsMember({"csv", "json"}));

    bool as_json = false;
    app.add_flag("--json", as_json, "Print the full JSON report on stdout");
    std::string report_path;
    app.add_option("--report", report_path, "Also write the JSON report to a file");

    // approx
    auto* capprox = app.add_subcommand("approx", "Approximate the Frechet distance");
    std::string pa_p, pa_q, pa_witness;
    double pa_eps = 0.25;
    capprox->add_option("P", pa_p, "c-packed curve file")->required();
    capprox->add_option("Q", pa_q, "general curve file")->required();
    capprox->add_option("--eps", pa_eps, "approximation parameter in (0, 1/2)")->required();
    capprox->add_option("--dump-alignment,--witness", pa_witness,
                        "Write the witness alignment JSON to a file");

    // decide
    auto* cdecide = app.add_subcommand("decide", "Three-way approximate decision at radius r");
    std::string pd_p, pd_q, pd_freespace;
    double pd_r = 0.0, pd_eps = 0.25;
    cdecide->add_option("P", pd_p)->required();
    cdecide->add_option("Q", pd_q)->required();
    cdecide->add_option("--r", pd_r, "decision radius")->required();
    cdecide->add_option("--eps", pd_eps, "approximation parameter in (0, 1/2)")->required();
    cdecide->add_option("--dump-freespace", pd_freespace,
                        "Write the exact free-space diagram at r to a JSON file");

    // exact
    auto* cexact = app.add_subcommand("exact", "Exact Frechet distance (quadratic oracle)");
    std::string pe_p, pe_q, pe_freespace;
    cexact->add_option("P", pe_p)->required();
    cexact->add_option("Q", pe_q)->required();
    cexact->add_option("--dump-freespace", pe_freespace,
                       "Write the free-space diagram at the computed value to a JSON file");

    // simplify
    auto* csimp = app.add_subcommand("simplify", "Greedy mu-simplification");
    std::string ps_p, ps_out;
    double ps_mu = 0.0;
    csimp->add_option("P", ps_p)->required();
    csimp->add_option("--mu", ps_mu, "simplification width (> 0)")->required();
    csimp->add_option("--out", ps_out, "Write the simplified curve to a file");

    // packedness
    auto* cpack = app.add_subcommand("packedness", "Sampled packedness lower bound");
    std::string pp_p;
    cpack->add_option("P", pp_p)->required();

    // generate
    auto* cgen = app.add_subcommand("generate", "Deterministic c-packed test curve");
    std::size_t pg_n = 100, pg_dim = 2;
    double pg_c = 4.0;
    std::uint64_t pg_seed = 1;
    std::string pg_out;
    cgen->add_option("--n", pg_n, "vertex count (>= 2)")->required();
    cgen->add_option("--c", pg_c, "packedness target (>= 2)")->required();
    cgen->add_option("--dim", pg_dim, "dimension (>= 1)")->required();
    cgen->add_option("--seed", pg_seed, "random seed")->required();
    cgen->add_option("--out", pg_out, "output curve file")->required();

    // bench
    auto* cbench = app.add_subcommand("bench", "Scaling table for approx on generated curves");
    std::vector<std::size_t> pb_sizes{10000, 20000, 40000};
    double pb_eps = 0.25, pb_c = 4.0;
    std::uint64_t pb_seed = 1;
    cbench->add_option("--sizes", pb_sizes, "vertex counts");
    cbench->add_option("--eps", pb_eps, "approximation parameter");
    cbench->add_option("--c", pb_c, "packedness target for the generator");
    cbench->add_option("--seed", pb_seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Timer timer;
        frechet::RunReport report;

        if (capprox->parsed()) {
            const Curve P = load_curve(pa_p, format_flag);
            const Curve Q = load_curve(pa_q, format_flag);
            auto res = frechet::approx_frechet(P, Q, pa_eps);
            report.command = "approx";
            report.inputs_json = json{{"P", curve_input_json(pa_p)},
                                      {"Q", curve_input_json(pa_q)},
                                      {"eps", pa_eps}}
                                     .dump();
            json outcome{{"value", res.value},
                         {"witness_pairs", res.witness.size()},
                         {"distance_set_size", res.distance_set_size}};
            report.outcome_json = outcome.dump();
            report.probe_count = res.complete_calls;
            report.wall_time_ms = timer.ms();
            if (!pa_witness.empty()) {
                write_text(pa_witness, frechet::alignment_to_json(P, Q, res.witness));
            }
            emit(report, as_json, report_path, std::to_string(res.value));
        } else if (cdecide->parsed()) {
            const Curve P = load_curve(pd_p, format_flag);
            const Curve Q = load_curve(pd_q, format_flag);
            frechet::EpsilonSchedule sched(pd_eps);
            const auto outcome = frechet::complete_decide(P, Q, pd_r, sched);
            report.command = "decide";
            report.inputs_json = json{{"P", curve_input_json(pd_p)},
                                      {"Q", curve_input_json(pd_q)},
                                      {"r", pd_r},
                                      {"eps", pd_eps}}
                                     .dump();
            std::string label;
            json joutcome;
            switch (outcome.kind) {
                case frechet::DecisionKind::kLE:
                    label = "LE";
                    joutcome = json{{"decision", "LE"}};
                    break;
                case frechet::DecisionKind::kGT:
                    label = "GT";
                    joutcome = json{{"decision", "GT"}};
                    break;
                case frechet::DecisionKind::kApprox:
                    label = "APPROX(" + std::to_string(outcome.value) + ")";
                    joutcome = json{{"decision", "APPROX"}, {"value", outcome.value}};
                    break;
            }
            report.outcome_json = joutcome.dump();
            report.probe_count = 1;
            report.wall_time_ms = timer.ms();
            if (!pd_freespace.empty()) {
                write_text(pd_freespace,
                           frechet::free_space_to_json(frechet::free_space_diagram(P, Q, pd_r)));
            }
            emit(report, as_json, report_path, label);
        } else if (cexact->parsed()) {
            const Curve P = load_curve(pe_p, format_flag);
            const Curve Q = load_curve(pe_q, format_flag);
            if (static_cast<double>(P.size()) * static_cast<double>(Q.size()) > 1e7) {
                std::cerr << "warning: n*m = " << P.size() * Q.size()
                          << " exceeds 1e7; the exact oracle is quadratic and may take long\n";
            }
            const double v = frechet::exact_frechet(P, Q);
            report.command = "exact";
            report.inputs_json =
                json{{"P", curve_input_json(pe_p)}, {"Q", curve_input_json(pe_q)}}.dump();
            report.outcome_json = json{{"value", v}}.dump();
            report.wall_time_ms = timer.ms();
            if (!pe_freespace.empty()) {
                write_text(pe_freespace,
                           frechet::free_space_to_json(frechet::free_space_diagram(P, Q, v)));
            }
            emit(report, as_json, report_path, std::to_string(v));
        } else if (csimp->parsed()) {
            const Curve P = load_curve(ps_p, format_flag);
            const auto simp = frechet::simplify(P, ps_mu);
            report.command = "simplify";
            report.inputs_json =
                json{{"P", curve_input_json(ps_p)}, {"mu", ps_mu}}.dump();
            json marked = json::array();
            for (std::size_t idx : simp.marked) marked.push_back(idx + 1);  // 1-based vertices
            report.outcome_json = json{{"vertices", simp.curve.size()},
                                       {"marked", std::move(marked)}}
                                      .dump();
            report.wall_time_ms = timer.ms();
            if (!ps_out.empty()) {
                frechet::write_curve_file(simp.curve, ps_out,
                                          frechet::format_from_path(ps_out));
            }
            emit(report, as_json, report_path,
                 std::to_string(simp.curve.size()) + " vertices");
        } else if (cpack->parsed()) {
            const Curve P = load_curve(pp_p, format_flag);
            const auto est = frechet::sampled_packedness(P);
            report.command = "packedness";
            report.inputs_json = json{{"P", curve_input_json(pp_p)}}.dump();
            report.outcome_json = json{{"value", est.value},
                                       {"centers", est.family.centers.size()},
                                       {"radii", est.family.radii.size()},
                                       {"family", est.family.note}}
                                      .dump();
            report.wall_time_ms = timer.ms();
            emit(report, as_json, report_path, std::to_string(est.value));
        } else if (cgen->parsed()) {
            const Curve c = frechet::generate_c_packed_curve(pg_n, pg_c, pg_dim, pg_seed);
            frechet::write_curve_file(c, pg_out, frechet::format_from_path(pg_out));
            report.command = "generate";
            report.inputs_json = json{{"n", pg_n},
                                      {"c", pg_c},
                                      {"dim", pg_dim},
                                      {"seed", pg_seed}}
                                     .dump();
            report.outcome_json = json{{"path", pg_out},
                                       {"digest", frechet::fnv1a_hex(slurp(pg_out))}}
                                      .dump();
            report.wall_time_ms = timer.ms();
            emit(report, as_json, report_path, pg_out);
        } else if (cbench->parsed()) {
            std::printf("%10s %12s %12s %10s %8s\n", "n", "wall_ms", "ratio", "probes",
                        "value");
            double prev = 0.0;
            json rows = json::array();
            for (std::size_t n : pb_sizes) {
                const Curve P = frechet::generate_c_packed_curve(n, pb_c, 2, pb_seed);
                const Curve Q = frechet::generate_c_packed_curve(n, pb_c, 2, pb_seed + 1);
                Timer t;
                const auto res = frechet::approx_frechet(P, Q, pb_eps);
                const double ms = t.ms();
                const double ratio = prev > 0.0 ? ms / prev : 0.0;
                std::printf("%10zu %12.1f %12.2f %10llu %8.3g\n", n, ms, ratio,
                            static_cast<unsigned long long>(res.complete_calls), res.value);
                rows.push_back(json{{"n", n},
                                    {"wall_ms", ms},
                                    {"probes", res.complete_calls},
                                    {"value", res.value}});
                prev = ms;
            }
            report.command = "bench";
            report.inputs_json = json{{"sizes", pb_sizes},
                                      {"eps", pb_eps},
                                      {"c", pb_c},
                                      {"seed", pb_seed}}
                                     .dump();
            report.outcome_json = json{{"rows", std::move(rows)}}.dump();
            report.wall_time_ms = timer.ms();
            if (as_json) std::cout << report.to_json();
            if (!report_path.empty()) write_text(report_path, report.to_json());
        }
        return 0;
    } catch (const frechet::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
