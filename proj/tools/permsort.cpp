#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "permsort/cache.hpp"
#include "permsort/diagrams.hpp"
#include "permsort/engine.hpp"
#include "permsort/sorters.hpp"
#include "permsort/taxonomy.hpp"

using namespace permsort;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kLimit = 2, kVerify = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::string cache_dir;
  bool no_cache = false;
  bool allow_large = false;
  std::uint64_t seed = 1;
};

BfsOptions bfs_options(const Globals& g) {
  BfsOptions o;
  if (g.allow_large) o.cap = kLargeBfsCap;
  return o;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

void emit(const Globals& g, const json& j, const std::string& plain) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << plain;
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// ---- wst ----

int cmd_wst(const Globals& g, const std::string& spec, int n) {
  const auto c = ClassHandle::parse(spec);
  const auto table = sorting_time_table(c, n, bfs_options(g));
  const auto worst = table->max();
  const RankCodec codec(n);
  std::vector<std::string> argmax;
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < table->size(); ++r) {
    const auto d = table->at(r);
    const bool hit = worst ? d == worst : !d.has_value();
    if (!hit) continue;
    if (++count <= 5) argmax.push_back(to_string(codec.unrank(r)));
  }
  json j = {{"spec", c.canonical()}, {"n", n}, {"argmax", argmax}, {"argmax_count", count}};
  j["wst"] = worst ? json(*worst) : json("infinite");
  std::ostringstream plain;
  plain << "spec: " << c.canonical() << "\nn: " << n << "\nwst: " << (worst ? std::to_string(*worst) : "infinite")
        << "\n" << (worst ? "argmax" : "unreachable") << " (" << count << "): " << join(argmax, " | ") << "\n";
  emit(g, j, plain.str());
  return kOk;
}

// ---- sort / verify ----

// Walks down the distance table: some member of C_n lowers st by exactly one.
SortCertificate optimal_certificate(const ClassHandle& c, const Perm& pi, const BfsOptions& opts) {
  const int n = pi.size();
  const auto table = sorting_time_table(c, n, opts);
  if (!table->at(pi)) throw DomainError(c.canonical() + " cannot sort " + to_string(pi));
  const auto level = enumerate_level(c, n, opts.cap);
  SortCertificate cert{pi, c.canonical(), {}};
  Perm cur = pi;
  while (*table->at(cur) > 0) {
    const int d = *table->at(cur);
    for (const auto& s : level) {
      const Perm next = compose(cur, s);
      if (table->at(next) == d - 1) {
        cert.steps.push_back(s);
        cur = next;
        break;
      }
    }
  }
  return cert;
}

int cmd_sort(const Globals& g, const std::string& sorter, bool optimal, const std::string& spec,
             const std::string& perm_text, int random_n, const std::string& out) {
  Perm pi;
  if (!perm_text.empty()) {
    pi = parse_perm(perm_text);
  } else if (random_n >= 0) {
    std::mt19937_64 rng(g.seed);
    std::vector<int> v(static_cast<std::size_t>(random_n));
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    pi = Perm(v);
  } else {
    throw UsageError("sort needs --perm or --random");
  }

  SortCertificate cert;
  std::string method;
  if (optimal) {
    if (spec.empty()) throw UsageError("--optimal needs --spec");
    cert = optimal_certificate(ClassHandle::parse(spec), pi, bfs_options(g));
    method = "optimal";
  } else {
    const auto* s = find_sorter(sorter);
    if (s == nullptr) throw UsageError("unknown sorter '" + sorter + "'");
    cert = s->run(pi);
    method = std::string(s->name);
  }

  const auto verdict = verify_certificate(cert);
  if (!verdict.ok) {
    std::cerr << "certificate failed verification: " << verdict.reason << "\n";
    return kVerify;
  }
  const auto text = certificate_to_text(cert);
  if (!out.empty()) write_text(out, text);

  std::vector<std::string> steps;
  for (const auto& s : cert.steps) steps.push_back(to_string(s));
  json j = {{"input", to_string(pi)}, {"spec", cert.spec}, {"method", method}, {"steps", cert.steps.size()},
            {"certificate", steps}, {"verified", true}};
  std::ostringstream plain;
  plain << "input: " << to_string(pi) << "\nspec: " << cert.spec << "\nmethod: " << method
        << "\nsteps: " << cert.steps.size() << "\nverified: true\n";
  if (out.empty()) plain << "\n" << text;
  emit(g, j, plain.str());
  return kOk;
}

int cmd_verify(const Globals& g, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  VerifyResult r;
  try {
    r = verify_certificate(certificate_from_text(buf.str()));
  } catch (const DomainError& e) {
    r = {false, std::string("malformed certificate: ") + e.what()};
  }
  emit(g, {{"ok", r.ok}, {"reason", r.reason}}, r.ok ? "ok\n" : "FAILED: " + r.reason + "\n");
  return r.ok ? kOk : kVerify;
}

// ---- scan ----

int cmd_scan(const Globals& g, const std::string& spec, int n_min, int n_max, bool omit_runtime) {
  if (n_min < 1 || n_max < n_min) throw UsageError("invalid n range");
  const auto c = ClassHandle::parse(spec);
  const auto opts = bfs_options(g);
  json rows = json::array();
  std::ostringstream csv;
  csv << "spec,n,wst,level_size,rin_of_class,counting_lower_bound,runtime_ms\n";
  for (int n = n_min; n <= n_max; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const auto worst = wst(c, n, opts);
    const auto level = enumerate_level(c, n, opts.cap).size();
    const int rc = rin_of_class(c, n, opts);
    const auto bound = counting_lower_bound(n, level);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    const std::string w = worst ? std::to_string(*worst) : "infinite";
    const std::string runtime = omit_runtime ? "" : std::to_string(ms.count());
    csv << csv_field(c.canonical()) << ',' << n << ',' << w << ',' << level << ',' << rc << ',' << bound << ','
        << runtime << "\n";
    json row = {{"spec", c.canonical()}, {"n", n}, {"level_size", level}, {"rin_of_class", rc},
                {"counting_lower_bound", bound}};
    row["wst"] = worst ? json(*worst) : json("infinite");
    row["runtime_ms"] = omit_runtime ? json(nullptr) : json(ms.count());
    rows.push_back(row);
  }
  emit(g, rows, csv.str());
  return kOk;
}

// ---- classify ----

int cmd_classify(const Globals& g, ResultCache* cache, const std::string& spec, int n_max) {
  const auto c = ClassHandle::parse(spec);
  const std::string key = c.canonical() + "|" + std::to_string(n_max) + "|" + std::to_string(bfs_options(g).cap);
  std::optional<json> j;
  if (cache != nullptr) j = cache->load_json("classify", key);
  if (!j) {
    BfsOptions opts = bfs_options(g);
    if (n_max > opts.cap) throw LimitExceeded("n_max " + std::to_string(n_max) + " exceeds the BFS cap");
    j = classify(c, n_max).to_json();
    if (cache != nullptr) cache->store_json("classify", key, *j);
  }
  std::ostringstream plain;
  plain << "spec: " << c.canonical() << "\nband: " << (*j)["band"].get<std::string>()
        << ((*j)["inconclusive"].get<bool>() ? " (inconclusive: Quadratic or Linear)" : "")
        << "\nconfidence: " << (*j)["confidence"].get<std::string>() << "\nevidence:\n";
  for (const auto& e : (*j)["evidence"]) {
    plain << "  " << e["check"].get<std::string>() << ": " << e["result"].get<std::string>();
    if (!e["witness"].get<std::string>().empty()) plain << " [" << e["witness"].get<std::string>() << "]";
    plain << "\n";
  }
  emit(g, *j, plain.str());
  return kOk;
}

// ---- diagram ----

int cmd_diagram(const Globals& g, const std::vector<std::string>& steps, const std::string& adjacency,
                std::string format, const std::string& out) {
  if (g.json) format = "json";
  if (format != "dot" && format != "json") throw UsageError("format must be dot or json");
  if (steps.empty() == adjacency.empty()) throw UsageError("give either --step (repeatable) or --adjacency");
  std::string text;
  if (!adjacency.empty()) {
    const auto graph = adjacency_graph(parse_perm(adjacency));
    text = format == "dot" ? export_dot(graph) : graph_to_json(graph).dump(2) + "\n";
  } else {
    std::vector<Perm> perms;
    for (const auto& s : steps) perms.push_back(parse_perm(s));
    const auto sd = build_sorting_diagram(perms);
    text = format == "dot" ? export_dot(sd) : diagram_to_json(sd).dump(2) + "\n";
    std::cerr << "vertices " << sd.graph.vertex_count() << ", edges " << sd.graph.edge_count() << ", crossings "
              << straight_line_crossings(sd) << ", contracted treewidth <= "
              << treewidth_upper(contract_to_adjacency(sd)) << "\n";
  }
  write_text(out, text);
  return kOk;
}

// ---- enumerate / rin / member ----

int cmd_enumerate(const Globals& g, const std::string& spec, int n, bool count_only) {
  const auto c = ClassHandle::parse(spec);
  const auto level = enumerate_level(c, n, g.allow_large ? kLargeBfsCap : kDefaultEnumerationCap);
  if (count_only) {
    emit(g, {{"spec", c.canonical()}, {"n", n}, {"count", level.size()}}, std::to_string(level.size()) + "\n");
    return kOk;
  }
  std::vector<std::string> members;
  std::string plain;
  for (const auto& p : level) {
    members.push_back(to_string(p));
    plain += members.back() + "\n";
  }
  emit(g, {{"spec", c.canonical()}, {"n", n}, {"count", level.size()}, {"members", members}}, plain);
  return kOk;
}

int cmd_rin(const Globals& g, const std::string& perm_text, const std::string& spec, int n) {
  const auto opts = bfs_options(g);
  if (!perm_text.empty()) {
    const auto pi = parse_perm(perm_text);
    const int r = rin(pi, opts);
    emit(g, {{"perm", to_string(pi)}, {"rin", r}}, std::to_string(r) + "\n");
    return kOk;
  }
  if (spec.empty() || n < 0) throw UsageError("rin needs --perm, or --spec with --n");
  const auto c = ClassHandle::parse(spec);
  const int r = rin_of_class(c, n, opts);
  emit(g, {{"spec", c.canonical()}, {"n", n}, {"rin_of_class", r}}, std::to_string(r) + "\n");
  return kOk;
}

int cmd_member(const Globals& g, const std::string& spec, const std::string& perm_text) {
  const auto c = ClassHandle::parse(spec);
  const auto pi = parse_perm(perm_text);
  const bool m = c.member(pi);
  emit(g, {{"spec", c.canonical()}, {"perm", to_string(pi)}, {"member", m}}, m ? "true\n" : "false\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permsort: sorting permutations with steps drawn from a permutation class"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON instead of plain text");
  app.add_option("--cache-dir", g.cache_dir, "Cache directory (default $PERMSORT_CACHE or .permsort-cache)");
  app.add_flag("--no-cache", g.no_cache, "Do not read or write the on-disk cache");
  app.add_flag("--allow-large", g.allow_large, "Raise the BFS cap from 10 to 11");
  app.add_option("--seed", g.seed, "Seed for sampled inputs");

  std::string spec, perm, sorter, out, adjacency, format = "dot";
  int n = -1, n_min = 3, n_max = 7, random_n = -1;
  bool optimal = false, count_only = false, omit_runtime = false;
  std::vector<std::string> steps;

  auto* wst_cmd = app.add_subcommand("wst", "Worst-case sorting time by exhaustive BFS");
  wst_cmd->add_option("--spec", spec, "Class specification")->required();
  wst_cmd->add_option("--n", n, "Permutation size")->required();

  auto* sort_cmd = app.add_subcommand("sort", "Sort a permutation and write a certificate");
  auto* sorter_opt = sort_cmd->add_option("--sorter", sorter, "bubble|insertion|oddeven|pancake|radix|pbt|layered|pegca");
  auto* optimal_opt = sort_cmd->add_flag("--optimal", optimal, "Use BFS-optimal steps from --spec");
  sorter_opt->excludes(optimal_opt);
  sort_cmd->add_option("--spec", spec, "Class for --optimal");
  sort_cmd->add_option("--perm", perm, "Input permutation");
  sort_cmd->add_option("--random", random_n, "Sort a random permutation of this size (see --seed)");
  sort_cmd->add_option("--out", out, "Certificate file");

  std::string cert_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate file");
  verify_cmd->add_option("certificate", cert_path, "Certificate file")->required();

  auto* scan_cmd = app.add_subcommand("scan", "CSV table of wst and related statistics over a size range");
  scan_cmd->add_option("--spec", spec, "Class specification")->required();
  scan_cmd->add_option("--n-min", n_min, "Smallest size")->capture_default_str();
  scan_cmd->add_option("--n-max", n_max, "Largest size")->capture_default_str();
  scan_cmd->add_flag("--omit-runtime", omit_runtime, "Leave the runtime_ms column empty");

  auto* classify_cmd = app.add_subcommand("classify", "Place a class into a sorting-time band");
  classify_cmd->add_option("--spec", spec, "Class specification")->required();
  classify_cmd->add_option("--n-max", n_max, "Largest size examined")->capture_default_str();

  auto* diagram_cmd = app.add_subcommand("diagram", "Sorting diagram or adjacency graph as DOT or JSON");
  diagram_cmd->add_option("--step", steps, "A step permutation (repeat for each step, in order)");
  diagram_cmd->add_option("--adjacency", adjacency, "Emit the adjacency graph of this permutation instead");
  diagram_cmd->add_option("--format", format, "dot or json")->capture_default_str();
  diagram_cmd->add_option("--out", out, "Output file (default stdout)");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List the members of one level");
  enumerate_cmd->add_option("--spec", spec, "Class specification")->required();
  enumerate_cmd->add_option("--n", n, "Permutation size")->required();
  enumerate_cmd->add_flag("--count", count_only, "Print only the number of members");

  auto* rin_cmd = app.add_subcommand("rin", "Reduced inversion number of a permutation or a class level");
  rin_cmd->add_option("--perm", perm, "Permutation");
  rin_cmd->add_option("--spec", spec, "Class specification (with --n)");
  rin_cmd->add_option("--n", n, "Permutation size");

  auto* member_cmd = app.add_subcommand("member", "Test class membership");
  member_cmd->add_option("--spec", spec, "Class specification")->required();
  member_cmd->add_option("--perm", perm, "Permutation")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::shared_ptr<ResultCache> cache;
  if (!g.no_cache) {
    cache = std::make_shared<ResultCache>(g.cache_dir.empty() ? ResultCache::default_dir() : std::filesystem::path(g.cache_dir));
    set_table_store(cache);
  }

  int code = kOk;
  try {
    if (*wst_cmd) code = cmd_wst(g, spec, n);
    if (*sort_cmd) code = cmd_sort(g, sorter, optimal, spec, perm, random_n, out);
    if (*verify_cmd) code = cmd_verify(g, cert_path);
    if (*scan_cmd) code = cmd_scan(g, spec, n_min, n_max, omit_runtime);
    if (*classify_cmd) code = cmd_classify(g, cache.get(), spec, n_max);
    if (*diagram_cmd) code = cmd_diagram(g, steps, adjacency, format, out);
    if (*enumerate_cmd) code = cmd_enumerate(g, spec, n, count_only);
    if (*rin_cmd) code = cmd_rin(g, perm, spec, n);
    if (*member_cmd) code = cmd_member(g, spec, perm);
  } catch (const LimitExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    code = kLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  }

  if (cache) {
    std::cerr << "cache " << cache->dir().string() << ": " << cache->hits() << " hit(s), " << cache->misses()
              << " miss(es)";
    if (cache->discarded() > 0) std::cerr << ", " << cache->discarded() << " corrupt entr(ies) discarded";
    std::cerr << "\n";
    set_table_store(nullptr);
  }
  return code;
}
