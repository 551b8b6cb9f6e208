// CLI entry point; subcommands are thin wrappers over the library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "qlink/finite.hpp"
#include "qlink/selector.hpp"
#include "qlink/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

void emit(const qlink::json& report, const std::string& out_path) {
    std::string text = report.dump(2);
    text += '\n';
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw qlink::input_error("cannot open output file: " + out_path);
        out << text;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qlink::input_error("cannot open file: " + path);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

qlink::BraidWord braid_from_options(const std::string& text, const std::string& file) {
    if (!text.empty() && !file.empty())
        throw qlink::input_error("pass either --braid or --braid-file, not both");
    if (!text.empty()) return qlink::parse_braid(text);
    if (!file.empty()) return qlink::parse_braid(read_file(file));
    throw qlink::input_error("a braid is required (--braid or --braid-file)");
}

const qlink::QuandleTable& require_finite(const qlink::AnyQuandle& q) {
    if (const auto* t = std::get_if<qlink::QuandleTable>(&q)) return *t;
    throw qlink::input_error("this command needs a finite quandle selector");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"link invariants from quandle colourings"};
    app.require_subcommand(1);

    std::string braid_text, braid_file, selector, out_path, diagram_path, emit_points;
    std::string family;
    std::uint64_t budget = qlink::kDefaultBudget;
    bool with_points = false;
    bool reversed = false;
    qlink::SolveConfig cfg;
    int trials = 20;

    auto add_braid = [&](CLI::App* cmd) {
        cmd->add_option("--braid", braid_text, "braid word, e.g. \"B2: s1^-3\"");
        cmd->add_option("--braid-file", braid_file, "file containing a braid word");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the JSON report here (default stdout)");
    };

    auto* check = app.add_subcommand("check-quandle", "verify axioms of a quandle");
    check->add_option("--quandle", selector, "quandle selector")->required();
    add_out(check);

    auto* finite = app.add_subcommand("solve-finite", "exact fixed-point count");
    add_braid(finite);
    finite->add_option("--quandle", selector, "finite quandle selector")->required();
    finite->add_option("--budget", budget, "candidate-tuple budget");
    finite->add_flag("--points", with_points, "include the fixed tuples in the report");
    add_out(finite);

    auto* geom = app.add_subcommand("solve-geom", "sample the fixed-point variety");
    add_braid(geom);
    geom->add_option("--quandle", selector, "geometric quandle selector")->required();
    geom->add_option("--seed", cfg.seed, "RNG seed");
    geom->add_option("--restarts", cfg.restarts, "random restarts");
    geom->add_option("--refine-tol", cfg.refine_tol, "residual acceptance threshold");
    geom->add_option("--cluster-eps", cfg.cluster_eps, "component adjacency radius");
    geom->add_option("--max-iters", cfg.max_iters, "refinement iteration cap");
    geom->add_option("--emit-points", emit_points, "write refined points as CSV");
    bool sl2_families = false;
    geom->add_flag("--sl2-families", sl2_families,
                   "attribute points to the closed-form trefoil solution families "
                   "(sl2 quandle only)");
    add_out(geom);

    auto* markov = app.add_subcommand("markov-test",
                                      "check count invariance under Markov moves");
    add_braid(markov);
    markov->add_option("--quandle", selector, "finite quandle selector")->required();
    markov->add_option("--trials", trials, "random conjugations to test");
    markov->add_option("--seed", cfg.seed, "RNG seed");
    markov->add_option("--budget", budget, "candidate-tuple budget");
    add_out(markov);

    auto* colour = app.add_subcommand("diagram-color", "count diagram colourings");
    colour->add_option("--diagram", diagram_path, "diagram JSON file")->required();
    colour->add_option("--quandle", selector, "finite quandle selector")->required();
    colour->add_option("--budget", budget, "search-node budget");
    colour->add_flag("--reversed", reversed, "use the orientation-reversed relations");
    colour->add_flag("--points", with_points, "include colourings in the report");
    add_out(colour);

    auto* oracle = app.add_subcommand("oracle", "great-circle angle roots");
    oracle->add_option("--family", family, "trefoil | figure-eight")->required();
    oracle->add_option("--seed", cfg.seed, "RNG seed for the sampled circle");
    add_out(oracle);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            auto q = qlink::parse_quandle_selector(selector);
            if (const auto* t = std::get_if<qlink::QuandleTable>(&q)) {
                qlink::json j = t->axiom_report().to_json();
                j["quandle"] = t->name();
                j["size"] = t->size();
                j["is_kei"] = qlink::is_kei(*t);
                emit(j, out_path);
            } else {
                // Geometric quandles: sampled axiom check.
                qlink::json j;
                std::visit(
                    [&](const auto& gq) {
                        using QT = std::decay_t<decltype(gq)>;
                        if constexpr (!std::is_same_v<QT, qlink::QuandleTable>) {
                            std::mt19937_64 rng(cfg.seed);
                            double worst = 0;
                            for (int i = 0; i < 2000; ++i) {
                                auto a = gq.random_point(rng), b = gq.random_point(rng),
                                     c = gq.random_point(rng);
                                worst = std::max(worst, gq.dist(gq.op(a, a), a));
                                worst = std::max(
                                    worst, gq.dist(gq.op(gq.op(a, b), c),
                                                   gq.op(gq.op(a, c), gq.op(b, c))));
                                worst =
                                    std::max(worst, gq.dist(gq.inv_op(gq.op(a, b), b), a));
                            }
                            j["quandle"] = gq.name();
                            j["pass"] = worst < qlink::kCheckTol;
                            j["sampled"] = true;
                            j["max_defect"] = worst;
                        }
                    },
                    q);
                emit(j, out_path);
            }
            return kExitOk;
        }

        if (finite->parsed()) {
            auto word = braid_from_options(braid_text, braid_file);
            auto q = qlink::parse_quandle_selector(selector);
            const auto& table = require_finite(q);
            auto fps = qlink::fixed_points(word, table, budget);
            emit(qlink::finite_report(word, table, fps, with_points), out_path);
            return kExitOk;
        }

        if (geom->parsed()) {
            auto word = braid_from_options(braid_text, braid_file);
            auto q = qlink::parse_quandle_selector(selector);
            if (std::holds_alternative<qlink::QuandleTable>(q))
                throw qlink::input_error("solve-geom needs a geometric quandle selector");
            qlink::json report;
            std::visit(
                [&](const auto& gq) {
                    using QT = std::decay_t<decltype(gq)>;
                    if constexpr (!std::is_same_v<QT, qlink::QuandleTable>) {
                        auto cloud = qlink::sample_solutions(word, gq, cfg);
                        auto an = qlink::analyze_cloud(cloud, gq, cfg);
                        report = qlink::solver_report(cloud, an, gq, cfg);
                        if (sl2_families) {
                            if constexpr (std::is_same_v<QT, qlink::SL2Quandle>) {
                                auto split = qlink::analyze_sl2_trefoil(cloud, gq, cfg);
                                qlink::json fam;
                                fam["diagonal"] = split.diagonal_count;
                                fam["family"] = split.family_count;
                                fam["ambiguous"] = split.ambiguous;
                                fam["unclassified"] = split.unclassified;
                                fam["dims"] = {split.components[0].dim,
                                               split.components[1].dim};
                                fam["max_residual_to_own"] = split.max_residual_to_own;
                                fam["min_residual_to_other"] = split.min_residual_to_other;
                                report["sl2_families"] = std::move(fam);
                            } else {
                                throw qlink::input_error(
                                    "--sl2-families needs the sl2 quandle");
                            }
                        }
                        if (!emit_points.empty()) {
                            std::ofstream csv(emit_points);
                            if (!csv)
                                throw qlink::input_error("cannot open CSV file: " + emit_points);
                            qlink::write_points_csv(csv, cloud, gq);
                        }
                    }
                },
                q);
            emit(report, out_path);
            return kExitOk;
        }

        if (markov->parsed()) {
            auto word = braid_from_options(braid_text, braid_file);
            auto q = qlink::parse_quandle_selector(selector);
            const auto& table = require_finite(q);
            auto base = qlink::fixed_points(word, table, budget).count();
            std::mt19937_64 rng(cfg.seed);
            qlink::json runs = qlink::json::array();
            bool all_equal = true;
            for (int t = 0; t < trials; ++t) {
                std::uniform_int_distribution<int> len(1, 4);
                std::uniform_int_distribution<int> gen(1, std::max(1, word.strands - 1));
                std::uniform_int_distribution<int> sign(0, 1);
                qlink::BraidWord by;
                by.strands = word.strands;
                if (word.strands > 1)
                    for (int i = 0, L = len(rng); i < L; ++i)
                        by.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
                auto conj = qlink::conjugate(word, by);
                auto cnt = qlink::fixed_points(conj, table, budget).count();
                runs.push_back({{"move", "conjugate"},
                                {"by", qlink::print_braid(by)},
                                {"count", cnt}});
                all_equal = all_equal && cnt == base;
            }
            for (int s : {+1, -1}) {
                auto stab = qlink::stabilize(word, s);
                auto cnt = qlink::fixed_points(stab, table, budget).count();
                runs.push_back({{"move", s > 0 ? "stabilize+" : "stabilize-"},
                                {"word", qlink::print_braid(stab)},
                                {"count", cnt}});
                all_equal = all_equal && cnt == base;
            }
            qlink::json j;
            j["word"] = qlink::print_braid(word);
            j["quandle"] = table.name();
            j["count"] = base;
            j["trials"] = runs;
            j["invariant"] = all_equal;
            emit(j, out_path);
            return all_equal ? kExitOk : kExitCompute;
        }

        if (colour->parsed()) {
            auto q = qlink::parse_quandle_selector(selector);
            const auto& table = require_finite(q);
            auto code = qlink::DiagramCode::from_json(
                qlink::json::parse(read_file(diagram_path)));
            auto res = qlink::diagram_colourings(code, table, budget, reversed, with_points);
            qlink::json j;
            j["diagram"] = diagram_path;
            j["quandle"] = table.name();
            j["arcs"] = code.arcs;
            j["reversed"] = reversed;
            j["count"] = res.count;
            if (with_points) j["colourings"] = res.colourings;
            emit(j, out_path);
            return kExitOk;
        }

        if (oracle->parsed()) {
            qlink::CircleFamily fam;
            if (family == "trefoil")
                fam = qlink::CircleFamily::trefoil;
            else if (family == "figure-eight")
                fam = qlink::CircleFamily::figure_eight;
            else
                throw qlink::input_error("--family must be trefoil or figure-eight");
            qlink::SphereQuandle s2(2);
            std::mt19937_64 rng(cfg.seed);
            auto a = s2.random_point(rng);
            auto b = s2.random_point(rng);
            while (s2.dist(a, b) < 0.2 || s2.dist(a, b) > 1.8) b = s2.random_point(rng);
            auto roots = qlink::great_circle_oracle(fam, a, b);
            qlink::json j;
            j["family"] = family;
            j["a"] = a;
            j["b"] = b;
            j["roots"] = roots;
            emit(j, out_path);
            return kExitOk;
        }
    } catch (const qlink::budget_error& e) {
        std::cerr << "error: " << e.what() << " (required " << e.required << ")\n";
        return kExitCompute;
    } catch (const qlink::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
