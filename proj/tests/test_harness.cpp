#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tg/harness.hpp"

using namespace tg;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p, const std::string& content = "") : path(p) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string tiny_db =
    "# label,conductor,a1,a2,a3,a4,a6\n"
    "\n"
    "11.a1,11,0,-1,1,-10,-20\n"
    "14.a1,14,1,0,1,4,-6\n"
    "36.a1,36,0,0,0,0,1\n";

}  // namespace

TEST_CASE("curve file parsing") {
    TempFile f("tg_db_test.csv", tiny_db);
    auto db = parse_curves(f.path);
    REQUIRE(db.size() == 3);
    CHECK(db[0].label == "11.a1");
    CHECK(db[0].conductor == 11);
    CHECK(db[0].curve.a4 == -10);
    CHECK(db[2].curve.a6 == 1);
    CHECK(find_curve(db, "14.a1").has_value());
    CHECK(!find_curve(db, "nope").has_value());

    TempFile empty("tg_db_empty.csv", "");
    CHECK(parse_curves(empty.path).empty());

    TempFile bad("tg_db_bad.csv", "11.a1,11,0,-1,1,-10\n");
    try {
        parse_curves(bad.path);
        CHECK(false);
    } catch (const std::exception& ex) {
        CHECK(std::string(ex.what()).find(":1") != std::string::npos);
    }

    TempFile bad2("tg_db_bad2.csv", "# fine\nok.a1,11,0,-1,1,-10,-20\nx.a1,0,0,0,0,0,1\n");
    try {
        parse_curves(bad2.path);
        CHECK(false);
    } catch (const std::exception& ex) {
        CHECK(std::string(ex.what()).find(":3") != std::string::npos);
    }
}

TEST_CASE("serialization round trip") {
    RunResult r;
    r.label = "36.a1";
    r.d = 2;
    GrowthRow g;
    g.deg = 2;
    g.minpoly = {Int(3), Int(0), Int(1)};
    g.torsion = {2, 6};
    g.primes = {2};
    r.growth.push_back(g);
    GrowthRow h;
    h.deg = 2;
    h.minpoly = {Int("123456789012345678901234567890"), Int(-1), Int(1)};
    h.torsion = {1, 21};
    h.primes = {3, 7};
    r.growth.push_back(h);

    std::string line = emit_json(r);
    CHECK(line.find("\"label\":\"36.a1\"") == 1);
    CHECK(line.find("\"torsion\":[1,21]") != std::string::npos);
    RunResult back = parse_result_line(line);
    CHECK(back == r);

    RunResult e;
    e.label = "x";
    e.d = 5;
    CHECK(emit_json(e) == "{\"label\":\"x\",\"d\":5,\"growth\":[]}");
    CHECK(parse_result_line(emit_json(e)) == e);

    e.error = "boom \"quoted\"\nline";
    CHECK(parse_result_line(emit_json(e)) == e);

    std::string csv = emit_csv(r);
    CHECK(csv.find("36.a1,2,2,\"3 0 1\",2,6,\"2\"\n") == 0);
    CHECK(emit_csv(e).find("x,5,0") == 0);
}

TEST_CASE("run_single wraps the engine") {
    CurveRecord rec{"36.a1", 36, CurveQ{Int(0), Int(0), Int(0), Int(0), Int(1)}};
    RunResult r = run_single(rec, 2);
    REQUIRE(r.growth.size() == 1);
    CHECK(r.growth[0].deg == 2);
    CHECK(r.growth[0].torsion == TorsionStructure{2, 6});
    CHECK(r.error.empty());

    RunResult r1 = run_single(rec, 1);
    REQUIRE(r1.growth.size() == 1);
    CHECK(r1.growth[0].deg == 1);
    CHECK(r1.growth[0].torsion == TorsionStructure{1, 6});
}

TEST_CASE("batch determinism, checkpointing and resume") {
    TempFile f("tg_db_batch.csv", tiny_db);
    auto db = parse_curves(f.path);

    TempFile o1("tg_batch_w1.jsonl");
    TempFile o2("tg_batch_w4.jsonl");
    run_batch(db, 1, 2, 1, o1.path);
    run_batch(db, 1, 2, 4, o2.path);
    std::string a = slurp(o1.path), b = slurp(o2.path);
    CHECK(a == b);
    CHECK(std::count(a.begin(), a.end(), '\n') == 6);  // 3 curves x 2 degrees

    // every line parses and is in input order (records outer, degrees inner)
    std::istringstream in(a);
    std::string line;
    std::vector<std::pair<std::string, int>> order;
    while (std::getline(in, line)) {
        RunResult r = parse_result_line(line);
        order.emplace_back(r.label, r.d);
    }
    std::vector<std::pair<std::string, int>> want = {{"11.a1", 1}, {"11.a1", 2}, {"14.a1", 1},
                                                     {"14.a1", 2}, {"36.a1", 1}, {"36.a1", 2}};
    CHECK(order == want);

    // truncate to 2 lines and resume: final file identical
    {
        std::istringstream src(a);
        std::ofstream out(o1.path, std::ios::trunc);
        for (int i = 0; i < 2 && std::getline(src, line); ++i) out << line << '\n';
    }
    run_batch(db, 1, 2, 2, o1.path, /*resume=*/true);
    CHECK(slurp(o1.path) == b);
}

TEST_CASE("summaries") {
    TempFile f("tg_db_sum.csv", tiny_db);
    auto db = parse_curves(f.path);
    TempFile out("tg_sum.jsonl");
    run_batch(db, 2, 2, 2, out.path);

    auto phi = summarize(out.path, "phi");
    REQUIRE(!phi.empty());
    bool saw26 = false;
    for (const auto& s : phi)
        if (s.d == 2) {
            for (const auto& g : s.groups)
                if (g == "(2,6)") saw26 = true;
            CHECK(s.max_fields >= 1);
            CHECK(!s.configurations.empty());
            for (const auto& [cfg, N] : s.configurations) CHECK(N >= 11);
        }
    CHECK(saw26);

    // conductor cutoff removes curves
    auto cut = summarize(out.path, "phi", 11);
    for (const auto& s : cut)
        for (const auto& [cfg, N] : s.configurations) CHECK(N == 11);

    // psi mode buckets by run degree; with d=2 runs the tables agree here
    auto psi = summarize(out.path, "psi");
    REQUIRE(!psi.empty());
    CHECK(psi[0].d == 2);

    TempFile none("tg_sum_empty.jsonl", "");
    CHECK(summarize(none.path, "phi").empty());
    CHECK(render_summary({}).find("no results") != std::string::npos);
}

TEST_CASE("group names") {
    CHECK(group_name({1, 21}) == "(21)");
    CHECK(group_name({4, 12}) == "(4,12)");
}
