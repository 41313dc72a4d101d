#include "metamatrix/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "metamatrix/cli/cache.hpp"
#include "metamatrix/cli/matrix_io.hpp"
#include "metamatrix/coxeter.hpp"
#include "metamatrix/engine.hpp"
#include "metamatrix/positivity.hpp"
#include "metamatrix/typeb.hpp"

namespace metamatrix::cli {
namespace {

using nlohmann::ordered_json;

// Enumerations past this order (E8 and large classical groups) are opt-in.
constexpr std::uint64_t kLongRunningOrder = 100'000'000;
constexpr std::uint64_t kCliOracleLimit = 10'000;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GroupOptions {
  std::string family;
  int rank = 0;
  int m = 0;
  std::string method;
  std::string format = "json";
  std::string cache_dir;
  bool no_cache = false;
  bool allow_long_running = false;
  unsigned workers = 0;
};

struct Target {
  Family family = Family::A;
  int rank = 0;
  int m = 0;
  std::optional<CoxeterSystem> sys; // absent for I2(m), m > 6
  ExactInt order;

  MatrixHeader header(std::string pipeline) const {
    MatrixHeader h{std::string(family_name(family)), rank, std::nullopt, std::move(pipeline)};
    if (family == Family::I2)
      h.m = m;
    return h;
  }
  std::string name() const {
    if (family == Family::I2)
      return "I2(" + std::to_string(m) + ")";
    return std::string(family_name(family)) + std::to_string(rank);
  }
};

Target resolve(const GroupOptions &opt) {
  Target t;
  try {
    t.family = parse_family(opt.family);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  if (t.family == Family::I2) {
    if (opt.m < 2)
      throw UsageError("family I2 needs --m with m >= 2");
    if (opt.rank != 0 && opt.rank != 2)
      throw UsageError("family I2 has rank 2");
    t.rank = 2;
    t.m = opt.m;
    t.order = 2 * opt.m;
    if (opt.m <= 6)
      t.sys = build_system(Family::I2, 2, opt.m);
    return t;
  }
  if (opt.m != 0)
    throw UsageError("--m applies to family I2 only");
  if (opt.rank < 1)
    throw UsageError("--rank is required");
  try {
    t.sys = build_system(t.family, opt.rank);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  t.rank = opt.rank;
  t.order = t.sys->order();
  return t;
}

const CoxeterSystem &realized(const Target &t) {
  if (!t.sys)
    throw UsageError(t.name() + " has no root realization (I2(m) is realized for m <= 6); "
                                "use --method formula");
  return *t.sys;
}

unsigned worker_count(const GroupOptions &opt) {
  if (opt.workers > 0)
    return opt.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

NTable obtain_ntable(const Target &t, const GroupOptions &opt, std::ostream &err) {
  const CoxeterSystem &sys = realized(t);
  std::optional<NTableCache> cache;
  if (!opt.no_cache) {
    cache.emplace(opt.cache_dir.empty() ? NTableCache::default_directory()
                                        : std::filesystem::path(opt.cache_dir));
    auto hit = cache->load(sys);
    if (hit.status == NTableCache::Status::Hit)
      return std::move(*hit.table);
    if (hit.status == NTableCache::Status::Corrupt)
      err << "warning: cache entry " << cache->entry_path(sys).string() << " is corrupt ("
          << hit.detail << "); recomputing\n";
  }

  const bool long_running = sys.order() > kLongRunningOrder;
  if (long_running && !opt.allow_long_running)
    throw ResourceLimitError(t.name() + " has " + sys.order().get_str() +
                             " elements; pass --allow-long-running to enumerate it");

  AccumulateOptions acc;
  acc.workers = worker_count(opt);
  if (long_running)
    acc.progress = [&err](std::size_t done, std::size_t total) {
      err << "coset " << done << "/" << total << '\n' << std::flush;
    };
  NTable table = accumulate_ntable(sys, acc);

  if (cache) {
    try {
      cache->store(sys, table);
    } catch (const std::exception &e) {
      err << "warning: could not write cache entry: " << e.what() << '\n';
    }
  }
  return table;
}

Metamatrix with_provenance(const Metamatrix &m, Provenance p) {
  return Metamatrix(m.rank(), std::vector<ExactInt>(m.entries().begin(), m.entries().end()), p);
}

bool formula_applies(const Target &t) { return t.family == Family::B || t.family == Family::I2; }

Metamatrix compute_leg(const Target &t, const std::string &method, const GroupOptions &opt,
                       std::ostream &err) {
  if (method == "formula") {
    if (!formula_applies(t))
      throw UsageError("method formula is available for families B and I2 only");
    if (t.family == Family::B)
      return metamatrix_typeB(t.rank);
    return with_provenance(metamatrix_from_ntable(dihedral_ntable(t.m)), Provenance::Formula);
  }
  if (method == "enumerate")
    return with_provenance(metamatrix_from_ntable(obtain_ntable(t, opt, err)),
                           Provenance::Enumeration);
  if (method == "oracle") {
    const CoxeterSystem &sys = realized(t);
    if (sys.order() > kCliOracleLimit)
      throw ResourceLimitError("method oracle is limited to groups of order <= " +
                               std::to_string(kCliOracleLimit) + " (" + t.name() + " has " +
                               sys.order().get_str() + ")");
    return DoubleCosetOracle(sys, kCliOracleLimit).metamatrix();
  }
  throw UsageError("unknown method '" + method + "'");
}

std::string default_method(const Target &t) { return formula_applies(t) ? "formula" : "enumerate"; }

int cmd_compute(const GroupOptions &opt, std::ostream &out, std::ostream &err) {
  const Target t = resolve(opt);
  const std::string method = opt.method.empty() ? default_method(t) : opt.method;
  const Metamatrix m = compute_leg(t, method, opt, err);
  out << render_matrix(t.header(std::string(provenance_name(m.provenance()))), m.to_exact_matrix(),
                       parse_format(opt.format));
  return kExitOk;
}

int cmd_ntable(const GroupOptions &opt, std::ostream &out, std::ostream &err) {
  const Target t = resolve(opt);
  std::string method = opt.method;
  if (method.empty())
    method = t.sys ? "enumerate" : "formula";
  NTable table;
  if (method == "formula") {
    if (t.family != Family::I2)
      throw UsageError("ntable: method formula is available for family I2 only");
    table = dihedral_ntable(t.m);
  } else if (method == "enumerate") {
    table = obtain_ntable(t, opt, err);
  } else {
    throw UsageError("ntable: method must be formula or enumerate");
  }

  const std::size_t size = table.size();
  const ExactMatrix grid = ExactMatrix::from_integers(size, size, table.counts());
  const MatrixHeader header = t.header(method);
  const OutputFormat format = parse_format(opt.format);
  if (format == OutputFormat::Json) {
    ordered_json doc = matrix_document(header, grid);
    doc["order"] = table.total().get_str();
    out << dump_document(doc);
  } else {
    out << render_matrix(header, grid, format);
  }
  return kExitOk;
}

struct Difference {
  std::string a, b;
  std::size_t row = 0, col = 0;
  std::string va, vb;
};

int cmd_verify(const GroupOptions &opt, std::ostream &out, std::ostream &err) {
  const Target t = resolve(opt);
  std::vector<std::string> legs;
  std::vector<std::string> skipped;
  if (formula_applies(t))
    legs.push_back("formula");
  if (t.sys)
    legs.push_back("enumerate");
  if (t.sys && t.order <= kCliOracleLimit)
    legs.push_back("oracle");
  else
    skipped.push_back(t.sys ? "oracle (order above " + std::to_string(kCliOracleLimit) + ")"
                            : "oracle (no root realization)");
  if (!t.sys)
    skipped.push_back("enumerate (no root realization)");

  std::vector<Metamatrix> results;
  for (const auto &leg : legs)
    results.push_back(compute_leg(t, leg, opt, err));

  std::optional<Difference> diff;
  for (std::size_t k = 1; k < results.size() && !diff; ++k)
    for (std::size_t i = 0; i < results[0].size() && !diff; ++i)
      for (std::size_t j = 0; j < results[0].size() && !diff; ++j)
        if (results[0](i, j) != results[k](i, j))
          diff = Difference{legs[0], legs[k], i, j, results[0](i, j).get_str(),
                            results[k](i, j).get_str()};
  const bool invariants = results.front().satisfies_invariants(t.order);
  const bool ok = !diff && invariants;

  if (parse_format(opt.format) == OutputFormat::Json) {
    ordered_json doc;
    doc["family"] = std::string(family_name(t.family));
    doc["rank"] = t.rank;
    if (t.family == Family::I2)
      doc["m"] = t.m;
    doc["legs"] = legs;
    doc["skipped"] = skipped;
    doc["agree"] = !diff;
    doc["invariants"] = invariants;
    if (diff) {
      ordered_json d;
      d["legs"] = {diff->a, diff->b};
      d["row"] = diff->row;
      d["col"] = diff->col;
      d["values"] = {diff->va, diff->vb};
      doc["difference"] = std::move(d);
    } else {
      doc["matrix"] = matrix_document(t.header("verify"), results.front().to_exact_matrix())["matrix"];
    }
    out << dump_document(doc);
  } else {
    out << t.name() << ": legs";
    for (const auto &leg : legs)
      out << ' ' << leg;
    out << '\n';
    for (const auto &s : skipped)
      out << "  skipped " << s << '\n';
    if (diff)
      out << "  MISMATCH at (" << diff->row << "," << diff->col << "): " << diff->a << " = "
          << diff->va << ", " << diff->b << " = " << diff->vb << '\n';
    else
      out << "  all legs agree entrywise\n";
    out << "  invariants " << (invariants ? "hold" : "FAIL") << '\n';
    out << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitNegative;
}

struct CheckTpOptions {
  std::string input;
  std::string inline_matrix;
  std::string method = "auto";
  std::string format = "json";
};

int cmd_check_tp(const CheckTpOptions &opt, std::ostream &out, std::ostream &err) {
  if (opt.input.empty() == opt.inline_matrix.empty())
    throw UsageError("check-tp: give exactly one of an input path or --matrix");

  std::string text;
  std::string origin = "<matrix>";
  if (!opt.inline_matrix.empty()) {
    text = opt.inline_matrix;
  } else if (opt.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    origin = "<stdin>";
  } else {
    std::ifstream in(opt.input);
    if (!in)
      throw UsageError("cannot read '" + opt.input + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
    origin = opt.input;
  }

  ExactMatrix a;
  try {
    a = parse_matrix(text);
  } catch (const ParseError &e) {
    err << origin << ':' << e.line() << ':' << e.column() << ": " << e.message() << '\n';
    return kExitUsage;
  }

  TPCertificate cert;
  if (opt.method == "fekete" || (opt.method == "auto" && a.rows() > kAllMinorsMaxSize))
    cert = fekete_check(a);
  else
    cert = all_minors_positive(a);

  if (opt.format == "pretty") {
    out << (cert.totally_positive ? "totally-positive" : "not") << " (" << tp_method_name(cert.method)
        << ", " << cert.minors_checked << " minors checked)\n";
    if (cert.witness) {
      out << "witness rows";
      for (auto r : cert.witness->rows)
        out << ' ' << r;
      out << " cols";
      for (auto c : cert.witness->cols)
        out << ' ' << c;
      out << " minor " << to_string(cert.witness->value) << '\n';
    }
  } else {
    out << dump_document(certificate_document(cert, a.rows()));
  }
  return cert.totally_positive ? kExitOk : kExitNegative;
}

struct ScmOptions {
  int n = 0, p = 0, q = 0;
  std::optional<int> lambda, mu;
  std::string format = "json";
};

int cmd_scm_count(const ScmOptions &opt, std::ostream &out) {
  if (opt.lambda.has_value() != opt.mu.has_value())
    throw UsageError("scm-count: give both --lambda and --mu, or neither");
  if (opt.n < 1 || opt.p < 0 || opt.q < 0 || opt.p > opt.n || opt.q > opt.n)
    throw UsageError("scm-count: need n >= 1 and 0 <= p, q <= n");
  ExactInt scm;
  ExactInt gscm;
  if (opt.lambda) {
    scm = scm_case_count(opt.n, opt.p, opt.q, *opt.lambda, *opt.mu);
    gscm = gscm_piece_count(opt.n, opt.p, opt.q, *opt.lambda, *opt.mu);
  } else {
    scm = scm_count(opt.n, opt.p, opt.q);
    gscm = gscm_count(opt.n, opt.p, opt.q);
  }
  if (opt.format == "pretty") {
    out << "SCM " << scm.get_str() << "\nGSCM " << gscm.get_str() << '\n';
    return kExitOk;
  }
  ordered_json doc;
  doc["n"] = opt.n;
  doc["p"] = opt.p;
  doc["q"] = opt.q;
  if (opt.lambda) {
    doc["lambda"] = *opt.lambda;
    doc["mu"] = *opt.mu;
  }
  doc["scm"] = scm.get_str();
  doc["gscm"] = gscm.get_str();
  out << dump_document(doc);
  return kExitOk;
}

void add_group_options(CLI::App *sub, GroupOptions &opt, bool with_method, bool with_format_csv) {
  sub->add_option("--family", opt.family, "A, B, D, I2, H, F or E")->required();
  sub->add_option("--rank", opt.rank, "rank n (implied for I2)")->check(CLI::Range(1, 64));
  sub->add_option("--m", opt.m, "dihedral parameter for I2")->check(CLI::Range(2, 1 << 20));
  if (with_method)
    sub->add_option("--method", opt.method, "formula | enumerate | oracle")
        ->check(CLI::IsMember({"formula", "enumerate", "oracle"}));
  sub->add_option("--format", opt.format, "output format")
      ->check(with_format_csv ? CLI::IsMember({"json", "csv", "pretty"})
                              : CLI::IsMember({"json", "pretty"}));
  sub->add_option("--cache-dir", opt.cache_dir,
                  "N-table cache (default $METAMATRIX_CACHE_DIR or ~/.metamatrix-cache)");
  sub->add_flag("--no-cache", opt.no_cache, "neither read nor write the N-table cache");
  sub->add_option("--workers", opt.workers, "enumeration threads (default: all cores)")
      ->check(CLI::Range(1u, 1024u));
  sub->add_flag("--allow-long-running", opt.allow_long_running,
                "permit enumerations of more than 10^8 elements");
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Contingency metamatrices of finite Coxeter groups", "metamatrix"};
  app.require_subcommand(1);

  GroupOptions compute_opt, ntable_opt, verify_opt;
  auto *compute = app.add_subcommand("compute", "compute the metamatrix M(W)");
  add_group_options(compute, compute_opt, true, true);
  auto *ntable = app.add_subcommand("ntable", "two-sided Eulerian table N(W), cached");
  add_group_options(ntable, ntable_opt, true, true);
  auto *verify = app.add_subcommand("verify", "cross-check every applicable pipeline");
  add_group_options(verify, verify_opt, false, false);
  verify_opt.format = "pretty";

  CheckTpOptions tp_opt;
  auto *check_tp = app.add_subcommand("check-tp", "certify total positivity of a matrix");
  check_tp->add_option("input", tp_opt.input, "matrix file (JSON or whitespace grid), - for stdin");
  check_tp->add_option("--matrix", tp_opt.inline_matrix, "inline matrix text");
  check_tp->add_option("--method", tp_opt.method, "auto | all-minors | fekete")
      ->check(CLI::IsMember({"auto", "all-minors", "fekete"}));
  check_tp->add_option("--format", tp_opt.format, "json | pretty")
      ->check(CLI::IsMember({"json", "pretty"}));

  ScmOptions scm_opt;
  auto *scm = app.add_subcommand("scm-count", "signed contingency matrix counts for type B");
  scm->add_option("--n", scm_opt.n, "n")->required();
  scm->add_option("--p", scm_opt.p, "number of row parts")->required();
  scm->add_option("--q", scm_opt.q, "number of column parts")->required();
  scm->add_option("--lambda", scm_opt.lambda, "row flag")->check(CLI::Range(0, 1));
  scm->add_option("--mu", scm_opt.mu, "column flag")->check(CLI::Range(0, 1));
  scm->add_option("--format", scm_opt.format, "json | pretty")
      ->check(CLI::IsMember({"json", "pretty"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute)
      return cmd_compute(compute_opt, out, err);
    if (*ntable)
      return cmd_ntable(ntable_opt, out, err);
    if (*verify)
      return cmd_verify(verify_opt, out, err);
    if (*check_tp)
      return cmd_check_tp(tp_opt, out, err);
    if (*scm)
      return cmd_scm_count(scm_opt, out);
  } catch (const ResourceLimitError &e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace metamatrix::cli
