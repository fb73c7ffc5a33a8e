#include "tg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tg {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long parse_long(const std::string& s) {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
}

}  // namespace

std::vector<CurveRecord> parse_curves(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open curve file: " + path);
    std::vector<CurveRecord> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        auto parts = split(t, ',');
        if (parts.size() != 7)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                     ": expected 7 comma-separated fields, got " +
                                     std::to_string(parts.size()));
        CurveRecord rec;
        try {
            rec.label = strip(parts[0]);
            if (rec.label.empty()) throw std::invalid_argument("empty label");
            rec.conductor = parse_long(strip(parts[1]));
            if (rec.conductor <= 0) throw std::invalid_argument("conductor must be positive");
            long a[5];
            for (int i = 0; i < 5; ++i) a[i] = parse_long(strip(parts[static_cast<std::size_t>(i) + 2]));
            rec.curve = CurveQ{Int(a[0]), Int(a[1]), Int(a[2]), Int(a[3]), Int(a[4])};
            rec.curve.validate();
        } catch (const std::exception& ex) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": bad row (" +
                                     ex.what() + ")");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::optional<CurveRecord> find_curve(const std::vector<CurveRecord>& db,
                                      const std::string& label) {
    for (const auto& r : db)
        if (r.label == label) return r;
    return std::nullopt;
}

std::string group_name(const TorsionStructure& t) {
    if (t.m == 1) return "(" + std::to_string(t.n) + ")";
    return "(" + std::to_string(t.m) + "," + std::to_string(t.n) + ")";
}

RunResult run_single(const CurveRecord& rec, int d) {
    RunResult out;
    out.label = rec.label;
    out.d = d;
    for (const auto& en : torsion_growth(rec.curve, d)) {
        GrowthRow row;
        row.deg = en.field->degree();
        row.minpoly = en.field->min_poly();
        row.torsion = en.group;
        row.primes = en.primes;
        out.growth.push_back(std::move(row));
    }
    return out;
}

// ------------------------------------------------------------- serialization

std::string emit_json(const RunResult& r) {
    std::ostringstream o;
    o << "{\"label\":\"" << r.label << "\",\"d\":" << r.d << ",\"growth\":[";
    for (std::size_t i = 0; i < r.growth.size(); ++i) {
        const auto& g = r.growth[i];
        if (i) o << ',';
        o << "{\"deg\":" << g.deg << ",\"minpoly\":[";
        for (std::size_t j = 0; j < g.minpoly.size(); ++j) {
            if (j) o << ',';
            o << g.minpoly[j].get_str();
        }
        o << "],\"torsion\":[" << g.torsion.m << ',' << g.torsion.n << "],\"primes\":[";
        for (std::size_t j = 0; j < g.primes.size(); ++j) {
            if (j) o << ',';
            o << g.primes[j];
        }
        o << "]}";
    }
    o << "]";
    if (!r.error.empty()) {
        o << ",\"error\":\"";
        for (char c : r.error)
            if (c == '"' || c == '\\')
                o << '\\' << c;
            else if (c == '\n')
                o << "\\n";
            else
                o << c;
        o << '"';
    }
    o << "}";
    return o.str();
}

std::string emit_csv(const RunResult& r) {
    std::ostringstream o;
    if (r.growth.empty()) {
        o << r.label << ',' << r.d << ",0,\"\",1,1,\"\"\n";
        return o.str();
    }
    for (const auto& g : r.growth) {
        o << r.label << ',' << r.d << ',' << g.deg << ",\"";
        for (std::size_t j = 0; j < g.minpoly.size(); ++j) {
            if (j) o << ' ';
            o << g.minpoly[j].get_str();
        }
        o << "\"," << g.torsion.m << ',' << g.torsion.n << ",\"";
        for (std::size_t j = 0; j < g.primes.size(); ++j) {
            if (j) o << ' ';
            o << g.primes[j];
        }
        o << "\"\n";
    }
    return o.str();
}

namespace {

/// Minimal parser for the exact shape emit_json produces.
class LineParser {
  public:
    explicit LineParser(std::string s) : s_(std::move(s)) {}

    void expect(const std::string& lit) {
        if (pos_ > s_.size() || s_.compare(pos_, lit.size(), lit) != 0)
            throw std::runtime_error("result line: expected '" + lit + "' at offset " +
                                     std::to_string(pos_));
        pos_ += lit.size();
    }
    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    void skip() { ++pos_; }

    std::string quoted() {
        expect("\"");
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
                ++pos_;
                out += (s_[pos_] == 'n') ? '\n' : s_[pos_];
            } else {
                out += s_[pos_];
            }
            ++pos_;
        }
        expect("\"");
        return out;
    }

    std::string integer_token() {
        std::size_t start = pos_;
        if (peek('-')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw std::runtime_error("result line: expected integer");
        return s_.substr(start, pos_ - start);
    }
    long integer() { return parse_long(integer_token()); }

    bool done() const { return pos_ == s_.size(); }

  private:
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

RunResult parse_result_line(const std::string& line) {
    LineParser p(strip(line));
    RunResult r;
    p.expect("{\"label\":");
    r.label = p.quoted();
    p.expect(",\"d\":");
    r.d = static_cast<int>(p.integer());
    p.expect(",\"growth\":[");
    while (!p.peek(']')) {
        GrowthRow g;
        p.expect("{\"deg\":");
        g.deg = static_cast<int>(p.integer());
        p.expect(",\"minpoly\":[");
        while (!p.peek(']')) {
            g.minpoly.emplace_back(p.integer_token());
            if (p.peek(',')) p.skip();
        }
        p.expect("],\"torsion\":[");
        g.torsion.m = static_cast<int>(p.integer());
        p.expect(",");
        g.torsion.n = static_cast<int>(p.integer());
        p.expect("],\"primes\":[");
        while (!p.peek(']')) {
            g.primes.push_back(p.integer());
            if (p.peek(',')) p.skip();
        }
        p.expect("]}");
        r.growth.push_back(std::move(g));
        if (p.peek(',')) p.skip();
    }
    p.expect("]");
    if (p.peek(',')) {
        p.expect(",\"error\":");
        r.error = p.quoted();
    }
    p.expect("}");
    if (!p.done()) throw std::runtime_error("result line: trailing characters");
    return r;
}

// --------------------------------------------------------------------- batch

void run_batch(const std::vector<CurveRecord>& records, int dlo, int dhi, int workers,
               const std::string& out_path, bool resume) {
    if (workers < 1) throw std::invalid_argument("run_batch: workers must be >= 1");
    if (dlo < 1 || dhi > 23 || dlo > dhi) throw std::invalid_argument("run_batch: bad degree range");

    struct Task {
        std::size_t rec;
        int d;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < records.size(); ++i)
        for (int d = dlo; d <= dhi; ++d) tasks.push_back({i, d});

    // The output file is the checkpoint: count complete lines already there.
    std::size_t start = 0;
    if (resume) {
        std::ifstream in(out_path);
        std::string line;
        while (in && std::getline(in, line) && !strip(line).empty()) ++start;
        if (start > tasks.size()) throw std::runtime_error("run_batch: checkpoint longer than input");
    }

    std::ofstream out(out_path, resume ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);

    std::mutex mu;
    std::condition_variable cv;
    std::map<std::size_t, std::string> ready;  // finished lines not yet flushed
    std::atomic<std::size_t> next{start};
    std::size_t flushed = start;

    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            RunResult r;
            try {
                r = run_single(records[t.rec], t.d);
            } catch (const std::exception& ex) {
                r.label = records[t.rec].label;
                r.d = t.d;
                r.error = ex.what();
            } catch (...) {
                r.label = records[t.rec].label;
                r.d = t.d;
                r.error = "unknown error";
            }
            std::lock_guard<std::mutex> lk(mu);
            ready[i] = emit_json(r);
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);

    {
        std::unique_lock<std::mutex> lk(mu);
        while (flushed < tasks.size()) {
            cv.wait(lk, [&] { return ready.count(flushed) != 0; });
            while (ready.count(flushed)) {
                out << ready[flushed] << '\n';
                ready.erase(flushed);
                ++flushed;
            }
            out.flush();  // each flushed prefix is a valid checkpoint
        }
    }
    for (auto& th : pool) th.join();
}

// ----------------------------------------------------------------- summaries

namespace {

long conductor_from_label(const std::string& label) {
    std::size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
    if (i == 0) return -1;
    return std::stol(label.substr(0, i));
}

}  // namespace

std::vector<DegreeSummary> summarize(const std::string& results_path, const std::string& mode,
                                     long max_conductor) {
    bool phi = (mode == "phi");
    if (!phi && mode != "psi") throw std::invalid_argument("summarize: mode must be phi or psi");

    std::ifstream in(results_path);
    if (!in) throw std::invalid_argument("cannot open results file: " + results_path);

    // degree -> curve label -> multiset of group names
    std::map<int, std::map<std::string, std::vector<std::string>>> bucket;
    // degree -> curve label -> conductor
    std::map<std::string, long> conductor_of;

    std::string line;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        RunResult r = parse_result_line(line);
        if (!r.error.empty()) continue;
        long N = conductor_from_label(r.label);
        if (max_conductor > 0 && (N < 0 || N > max_conductor)) continue;
        conductor_of[r.label] = N;
        for (const auto& g : r.growth) {
            int key = phi ? g.deg : r.d;
            if (!phi && (g.deg <= 0 || r.d % g.deg != 0)) continue;
            bucket[key][r.label].push_back(group_name(g.torsion));
        }
    }

    std::vector<DegreeSummary> out;
    for (auto& [d, per_curve] : bucket) {
        DegreeSummary s;
        s.d = d;
        std::set<std::string> groups;
        std::map<std::string, long> config_min;  // config string -> min conductor
        for (auto& [label, multiset] : per_curve) {
            s.max_fields = std::max(s.max_fields, static_cast<int>(multiset.size()));
            std::sort(multiset.begin(), multiset.end());
            for (const auto& g : multiset) groups.insert(g);
            std::string cfg = "[";
            for (std::size_t i = 0; i < multiset.size(); ++i) {
                if (i) cfg += ',';
                cfg += multiset[i];
            }
            cfg += "]";
            long N = conductor_of[label];
            auto it = config_min.find(cfg);
            if (it == config_min.end() || (N >= 0 && N < it->second)) config_min[cfg] = N;
        }
        s.groups.assign(groups.begin(), groups.end());
        for (auto& [cfg, N] : config_min) s.configurations.emplace_back(cfg, N);
        out.push_back(std::move(s));
    }
    return out;
}

std::string render_summary(const std::vector<DegreeSummary>& s) {
    std::ostringstream o;
    for (const auto& row : s) {
        o << "degree " << row.d << ": " << row.configurations.size() << " configuration"
          << (row.configurations.size() == 1 ? "" : "s") << ", max fields per curve "
          << row.max_fields << "\n";
        o << "  groups:";
        for (const auto& g : row.groups) o << ' ' << g;
        o << "\n";
        for (const auto& [cfg, N] : row.configurations)
            o << "  " << cfg << "  min conductor " << N << "\n";
    }
    if (s.empty()) o << "(no results)\n";
    return o.str();
}

}  // namespace tg
