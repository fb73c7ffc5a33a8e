#ifndef TG_HARNESS_HPP
#define TG_HARNESS_HPP

#include <optional>
#include <string>

#include "tg/growth.hpp"

namespace tg {

/// One curve from the bundled dataset.
struct CurveRecord {
    std::string label;
    long conductor = 0;
    CurveQ curve;
};

/// Parse a CSV file with lines "label,conductor,a1,a2,a3,a4,a6".
/// Blank lines and lines starting with '#' are skipped; a malformed row
/// raises std::runtime_error naming the line number.
std::vector<CurveRecord> parse_curves(const std::string& path);

/// Find a record by label.
std::optional<CurveRecord> find_curve(const std::vector<CurveRecord>& db, const std::string& label);

/// One growth field in serialized form.
struct GrowthRow {
    int deg = 1;
    std::vector<Int> minpoly;  // lowest degree first
    TorsionStructure torsion;
    std::vector<long> primes;

    bool operator==(const GrowthRow& o) const {
        return deg == o.deg && minpoly == o.minpoly && torsion == o.torsion && primes == o.primes;
    }
};

/// Result of one (curve, degree) run.
struct RunResult {
    std::string label;
    int d = 1;
    std::vector<GrowthRow> growth;
    std::string error;  // nonempty if the run failed

    bool operator==(const RunResult& o) const {
        return label == o.label && d == o.d && growth == o.growth && error == o.error;
    }
};

/// Run the growth engine on one curve; exceptions propagate.
RunResult run_single(const CurveRecord& rec, int d);

/// One JSON object per line, fixed key order:
/// {"label":…,"d":…,"growth":[{"deg":…,"minpoly":[…],"torsion":[m,n],"primes":[…]}]}
/// plus an "error" key on failed runs.
std::string emit_json(const RunResult& r);
/// CSV flattening, one growth field per row:
/// label,d,deg,"c0 c1 …",m,n,"p1 p2 …"   (one row with deg 0 when growth is empty)
std::string emit_csv(const RunResult& r);
/// Inverse of emit_json for a single line.
RunResult parse_result_line(const std::string& line);

/// Run every record at every degree in [dlo, dhi], with `workers` threads,
/// appending JSON lines to out_path in input order (records outer, degrees
/// inner).  The output file doubles as the checkpoint: with resume = true,
/// lines already present are kept and their work items skipped.  A failed run
/// is recorded as a result with the "error" key; the batch continues.
/// Output is byte-identical for any worker count.
void run_batch(const std::vector<CurveRecord>& records, int dlo, int dhi, int workers,
               const std::string& out_path, bool resume = false);

/// Per-degree statistics over a results file.
struct DegreeSummary {
    int d = 0;
    std::vector<std::string> groups;  // distinct torsion groups observed
    int max_fields = 0;               // max growth fields on one curve
    /// distinct torsion configurations (sorted multiset of groups per curve),
    /// each with the minimal conductor realizing it
    std::vector<std::pair<std::string, long>> configurations;
};

/// Mode "phi" buckets growth fields by exact degree; mode "psi" buckets, for
/// each run degree d, all fields of degree dividing d.  Curves with conductor
/// above max_conductor are ignored (0 = no limit).  Conductors are read from
/// the numeric label prefix.
std::vector<DegreeSummary> summarize(const std::string& results_path, const std::string& mode,
                                     long max_conductor = 0);

/// Render a summary as an aligned text table.
std::string render_summary(const std::vector<DegreeSummary>& s);

/// "(n)" for cyclic, "(m,n)" otherwise.
std::string group_name(const TorsionStructure& t);

}  // namespace tg

#endif
