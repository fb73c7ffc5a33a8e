#include <CLI11.hpp>
#include <iostream>

#include "tg/harness.hpp"

using namespace tg;

namespace {

CurveQ parse_ainvs(const std::string& s) {
    std::vector<Int> a;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (cur.empty()) throw CLI::ValidationError("--curve", "empty coefficient");
            a.emplace_back(cur);
            cur.clear();
        } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            cur += c;
        } else if (c != ' ') {
            throw CLI::ValidationError("--curve", std::string("bad character '") + c + "'");
        }
    }
    if (a.size() != 5) throw CLI::ValidationError("--curve", "expected a1,a2,a3,a4,a6");
    CurveQ e{a[0], a[1], a[2], a[3], a[4]};
    e.validate();
    return e;
}

void print_result(const RunResult& r, const std::string& format) {
    if (format == "csv")
        std::cout << emit_csv(r);
    else
        std::cout << emit_json(r) << "\n";
}

RunResult oracle_result(const CurveRecord& rec, int d) {
    RunResult out;
    out.label = rec.label;
    out.d = d;
    for (const auto& en : naive_oracle(rec.curve, d)) {
        GrowthRow row;
        row.deg = en.field->degree();
        row.minpoly = en.field->min_poly();
        row.torsion = en.group;
        row.primes = en.primes;
        out.growth.push_back(std::move(row));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsion growth of elliptic curves over number fields of bounded degree"};
    app.require_subcommand(1);

    std::string curve_str, label, db_path, out_path, format = "json", mode = "phi", degrees_str;
    int degree = 1, workers = 1;
    long seed = 0, max_conductor = 0;
    bool resume = false;

    auto* run = app.add_subcommand("run", "compute torsion growth for one curve");
    run->add_option("--curve", curve_str, "a-invariants a1,a2,a3,a4,a6");
    run->add_option("--label", label, "curve label to look up in --db");
    run->add_option("--db", db_path, "curve database (CSV)");
    run->add_option("--degree", degree, "degree bound d (1..23)")->required();
    run->add_option("--seed", seed, "random seed (output is deterministic regardless)");
    run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* oracle = app.add_subcommand("oracle", "brute-force cross-check (small degree only)");
    oracle->add_option("--curve", curve_str, "a-invariants a1,a2,a3,a4,a6");
    oracle->add_option("--label", label, "curve label to look up in --db");
    oracle->add_option("--db", db_path, "curve database (CSV)");
    oracle->add_option("--degree", degree, "degree bound d")->required();
    oracle->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* batch = app.add_subcommand("batch", "run a whole curve database");
    batch->add_option("--db", db_path, "curve database (CSV)")->required();
    batch->add_option("--degrees", degrees_str, "degree range LO..HI")->required();
    batch->add_option("--workers", workers, "worker threads")->default_val(1);
    batch->add_option("--out", out_path, "output file (JSON lines)")->required();
    batch->add_flag("--resume", resume, "continue an interrupted run");

    auto* summ = app.add_subcommand("summarize", "per-degree statistics of a results file");
    std::string results_path;
    summ->add_option("path", results_path, "results file (JSON lines)")->required();
    summ->add_option("--mode", mode, "phi (exact degree) or psi (degree dividing d)")
        ->check(CLI::IsMember({"phi", "psi"}));
    summ->add_option("--max-conductor", max_conductor, "ignore curves above this conductor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed() || oracle->parsed()) {
            CurveRecord rec;
            if (!curve_str.empty()) {
                rec.curve = parse_ainvs(curve_str);
                rec.label = "curve";
            } else if (!label.empty() && !db_path.empty()) {
                auto found = find_curve(parse_curves(db_path), label);
                if (!found) {
                    std::cerr << "label not found in database: " << label << "\n";
                    return 1;
                }
                rec = *found;
            } else {
                std::cerr << "need --curve or both --label and --db\n";
                return 1;
            }
            if (degree < 1 || degree > 23) {
                std::cerr << "degree must be in 1..23\n";
                return 1;
            }
            RunResult r = run->parsed() ? run_single(rec, degree) : oracle_result(rec, degree);
            print_result(r, format);
        } else if (batch->parsed()) {
            auto sep = degrees_str.find("..");
            if (sep == std::string::npos) {
                std::cerr << "--degrees wants LO..HI\n";
                return 1;
            }
            int dlo = std::stoi(degrees_str.substr(0, sep));
            int dhi = std::stoi(degrees_str.substr(sep + 2));
            if (dlo < 1 || dhi > 23 || dlo > dhi) {
                std::cerr << "degree range must satisfy 1 <= LO <= HI <= 23\n";
                return 1;
            }
            run_batch(parse_curves(db_path), dlo, dhi, workers, out_path, resume);
        } else if (summ->parsed()) {
            std::cout << render_summary(summarize(results_path, mode, max_conductor));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
