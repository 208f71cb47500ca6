// divgraph: command-line front end.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "divgraph/builder.hpp"
#include "divgraph/chain_io.hpp"
#include "divgraph/counting.hpp"
#include "divgraph/ordering.hpp"
#include "divgraph/solver.hpp"

using namespace divgraph;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2;
constexpr double kAlphaTarget = 0.306;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Csv, Json };

struct Globals {
  Format format = Format::Text;
  unsigned threads = 1;
};

Rational num(const std::string& s) { return Rational::parse(s); }

u64 integer(const std::string& s, const char* what) {
  Rational r = num(s);
  if (!r.is_integer() || r < Rational(0)) throw UsageError(std::string(what) + " must be a nonnegative integer");
  return static_cast<u64>(r.num());
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, sep);) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::vector<Rational> num_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& tok : split(s, ',')) out.push_back(num(tok));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

json rat(const Rational& r) { return detail::rational_to_json(r); }

void emit_chain(const Globals& g, const Chain& c, const std::string& out_path) {
  ChainFormat f = g.format == Format::Json ? ChainFormat::Json : ChainFormat::Text;
  if (!out_path.empty()) {
    if (out_path.size() > 5 && out_path.ends_with(".json")) f = ChainFormat::Json;
    write_chain_file(out_path, c, f);
    std::cout << "wrote " << c.length() << " entries to " << out_path << '\n';
  } else if (f == ChainFormat::Json) {
    write_chain(std::cout, c, f);
  } else {
    std::cout << c.str() << '\n';
  }
}

Chain load_chain(const std::string& path, const std::string& x, const std::string& y) {
  Chain c = read_chain_file(path);
  if (x.empty() != y.empty()) throw UsageError("--x and --y go together");
  if (!x.empty()) c = c.with_context(ChainContext{num(x), num(y)});
  return c;
}

// --- subcommands ------------------------------------------------------------

int run_count(const Globals& g, const std::string& kind, const std::string& x, const std::string& y,
              const std::string& z, const std::string& t) {
  CountQuery q;
  q.kind = parse_count_kind(kind);
  q.x = num(x);
  if (!y.empty()) q.y = num(y);
  q.z = num(z);
  q.t = num(t);
  CountingLimits lim;
  lim.threads = g.threads;
  auto r = count(q, lim);
  double ratio = q.x > Rational(1) ? static_cast<double>(r.count) * std::log(q.x.to_double()) / q.x.to_double() : 0;
  bool dense = q.kind == CountKind::D || q.kind == CountKind::DPrime;
  auto target = dense ? known_ct(q.t, q.kind == CountKind::DPrime) : std::nullopt;
  switch (g.format) {
    case Format::Csv: {
      write_count_csv_header(std::cout);
      write_count_csv_row(std::cout, r);
      RatioSeries s{{RatioRow{q.x, r.count}}, target};
      if (q.x > Rational(1)) write_ratio_csv(std::cout, s);
      break;
    }
    case Format::Json: {
      json j{{"kind", to_string(q.kind)}, {"x", rat(q.x)},     {"y", rat(q.y_or_x())}, {"z", rat(q.z)},
             {"t", rat(q.t)},             {"count", r.count}, {"ratio", std::stod(fixed6(ratio))}};
      if (target) j["target"] = *target;
      std::cout << j.dump() << '\n';
      break;
    }
    case Format::Text:
      std::cout << to_string(q.kind) << "(x=" << q.x << ", y=" << q.y_or_x() << ", z=" << q.z << ", t=" << q.t
                << ") = " << r.count << '\n';
      std::cout << "count*log(x)/x = " << fixed6(ratio);
      if (target) std::cout << " (target " << fixed6(*target) << ")";
      std::cout << '\n';
  }
  return kOk;
}

int run_buchstab(const Globals& g, const std::string& x_max, const std::string& x_step, const std::string& ys,
                 const std::string& zs, const std::string& ts) {
  u64 top = integer(x_max, "--x-max"), step = integer(x_step, "--x-step");
  if (step == 0) throw UsageError("--x-step must be positive");
  auto z_list = num_list(zs), t_list = num_list(ts);
  auto y_tokens = split(ys, ',');
  std::size_t points = 0, failures = 0;
  json rows = json::array();
  if (g.format == Format::Csv) std::cout << "x,y,z,t,lhs,rhs,equal\n";
  for (u64 xi = 1; xi <= top; xi += step) {
    Rational x(static_cast<Rational::int_type>(xi));
    for (const auto& tok : y_tokens) {
      Rational y = tok == "x" ? x : tok == "sqrt" ? Rational(static_cast<Rational::int_type>(detail::isqrt(xi))) : num(tok);
      if (y < Rational(1)) continue;
      for (const auto& z : z_list) {
        for (const auto& t : t_list) {
          auto b = buchstab_check(x, y, z, t);
          ++points;
          failures += !b.equal;
          if (g.format == Format::Csv) {
            std::cout << x << ',' << y << ',' << z << ',' << t << ',' << b.lhs << ',' << b.rhs << ','
                      << (b.equal ? 1 : 0) << '\n';
          } else if (!b.equal) {
            if (g.format == Format::Json) {
              rows.push_back({{"x", rat(x)}, {"y", rat(y)}, {"z", rat(z)}, {"t", rat(t)}, {"lhs", b.lhs}, {"rhs", b.rhs}});
            } else {
              std::cout << "MISMATCH x=" << x << " y=" << y << " z=" << z << " t=" << t << ": " << b.lhs
                        << " != " << b.rhs << '\n';
            }
          }
        }
      }
    }
  }
  if (g.format == Format::Json) {
    std::cout << json{{"points", points}, {"failures", failures}, {"mismatches", rows}}.dump() << '\n';
  } else if (g.format == Format::Text) {
    std::cout << points << " grid points, " << failures << " failures\n";
  }
  return failures == 0 ? kOk : kVerifyFailed;
}

int run_estimate(const Globals& g, const std::string& t, const std::string& xs, bool squarefree) {
  CountingLimits lim;
  lim.threads = g.threads;
  auto s = estimate_ct(num(t), num_list(xs), squarefree, lim);
  if (g.format == Format::Json) {
    json rows = json::array();
    for (const auto& r : s.rows) {
      rows.push_back({{"x", rat(r.x)}, {"count", r.count}, {"ratio", std::stod(fixed6(RatioSeries::ratio(r)))}});
    }
    json j{{"t", rat(num(t))}, {"squarefree", squarefree}, {"rows", rows}};
    j["target"] = s.target ? json(*s.target) : json(nullptr);
    std::cout << j.dump() << '\n';
  } else {
    write_ratio_csv(std::cout, s);
  }
  return kOk;
}

int report_verify(const Globals& g, const Chain& c) {
  auto rep = verify_chain(c);
  if (g.format == Format::Json) {
    json j{{"ok", rep.ok()}, {"length", rep.length}};
    if (!rep.ok()) j["message"] = rep.message();
    std::cout << j.dump() << '\n';
  } else if (rep.ok()) {
    std::cout << "OK length " << rep.length << '\n';
  } else {
    std::cout << "INVALID " << rep.message() << '\n';
  }
  return rep.ok() ? kOk : kVerifyFailed;
}

int run_order(const Globals& g, const std::string& text) {
  // sizes ("3,1") or explicit blocks ("a b;c")
  std::vector<std::vector<std::string>> blocks;
  bool sizes_only = text.find(';') == std::string::npos && text.find(' ') == std::string::npos;
  if (sizes_only) {
    std::size_t next = 0;
    for (const auto& tok : split(text, ',')) {
      u64 n = integer(tok, "block size");
      if (n == 0) throw UsageError("block sizes must be positive");
      blocks.emplace_back();
      for (u64 i = 0; i < n; ++i) blocks.back().push_back(std::to_string(next++));
    }
  } else {
    for (const auto& b : split(text, ';')) blocks.push_back(split(b, ' '));
  }
  if (blocks.empty()) throw UsageError("--blocks is empty");
  auto arr = arrange(blocks);
  if (g.format == Format::Json) {
    json j{{"feasible", arr.feasible()}, {"total", arr.total}, {"largest", arr.largest}};
    if (arr.feasible()) {
      j["order"] = *arr.order;
      j["block_of"] = arr.block_of;
    }
    std::cout << j.dump() << '\n';
  } else if (arr.feasible()) {
    for (std::size_t i = 0; i < arr.order->size(); ++i) {
      std::cout << (i ? " " : "") << (*arr.order)[i] << "[" << arr.block_of[i] << "]";
    }
    std::cout << '\n';
  } else {
    std::cout << "infeasible: largest block has " << arr.largest << " elements, more than (n+1)/2 with n = "
              << arr.total << '\n';
  }
  return arr.feasible() ? kOk : kVerifyFailed;
}

int run_peel(const Globals& g, u64 A, u64 q, const std::string& x, const std::string& y) {
  Rational rx = num(x), ry = num(y);
  auto c = peel_chain(A, q, rx, ry);
  auto bad = check_peel_postconditions(c, A, q, rx, ry);
  if (g.format == Format::Json) {
    std::cout << json{{"chain", c.entries()}, {"failed_clauses", bad}}.dump() << '\n';
  } else {
    std::cout << c.str() << '\n';
    for (const auto& b : bad) std::cout << "postcondition failed: " << b << '\n';
  }
  return bad.empty() ? kOk : kVerifyFailed;
}

int run_connect(const Globals& g, u64 A, u64 B, const std::string& x, const std::string& y) {
  auto c = connect_astar(A, B, num(x), num(y));
  bool ok = verify_chain(c).ok();
  if (g.format == Format::Json) {
    std::cout << json{{"chain", c.entries()}, {"ok", ok}}.dump() << '\n';
  } else {
    std::cout << c.str() << '\n';
  }
  return ok ? kOk : kVerifyFailed;
}

int run_exact(const Globals& g, const std::string& x, const std::string& y, const std::string& budget,
              const std::string& seed, bool no_hub) {
  SearchOptions opt;
  double secs = num(budget).to_double();
  if (secs < 0) throw UsageError("--budget must be nonnegative");
  opt.budget = std::chrono::milliseconds(static_cast<long long>(secs * 1000));
  opt.threads = g.threads;
  opt.hub_bound = !no_hub;
  if (!seed.empty()) opt.seed = read_chain_file(seed);
  Rational rx = num(x);
  auto r = longest_chain_exact(rx, y.empty() ? rx : num(y), opt);
  if (g.format == Format::Json) {
    json j{{"status", to_string(r.status)},   {"best_length", r.best_length},
           {"chain", r.best_chain.entries()}, {"nodes", r.nodes_explored},
           {"ms", r.budget_used.count()}};
    j["upper_bound"] = r.upper_bound ? json(*r.upper_bound) : json(nullptr);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << to_string(r.status) << ' ' << r.best_length << '\n' << r.best_chain.str() << '\n';
    std::cout << "nodes " << r.nodes_explored << ", " << r.budget_used.count() << " ms";
    if (r.upper_bound) std::cout << ", root bound " << *r.upper_bound;
    std::cout << '\n';
  }
  return kOk;
}

int run_conjecture(const Globals& g, const std::string& xs) {
  auto grid = num_list(xs);
  if (g.format == Format::Csv) std::cout << "x,lower_bound,ratio,alpha_target\n";
  json rows = json::array();
  for (const auto& x : grid) {
    if (x < Rational(2)) throw UsageError("conjecture-f: x must be >= 2");
    auto lb = lower_bound_f(x, x);
    double ratio = static_cast<double>(lb.bound) * std::log(x.to_double()) / x.to_double();
    switch (g.format) {
      case Format::Csv:
        std::cout << x << ',' << lb.bound << ',' << fixed6(ratio) << ',' << fixed6(kAlphaTarget) << '\n';
        break;
      case Format::Json:
        rows.push_back({{"x", rat(x)}, {"lower_bound", lb.bound}, {"ratio", std::stod(fixed6(ratio))}});
        break;
      case Format::Text:
        std::cout << "x=" << x << "  f >= " << lb.bound << "  f*log(x)/x >= " << fixed6(ratio) << "  (alpha target "
                  << fixed6(kAlphaTarget) << ")\n";
    }
  }
  if (g.format == Format::Json) std::cout << json{{"alpha_target", kAlphaTarget}, {"rows", rows}}.dump() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long chains in the divisor graph: counting, construction, verification"};
  app.require_subcommand(1);
  Globals g;
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1U, 256U));

  int code = kOk;
  std::function<int()> action;

  // count
  std::string kind, x, y, z = "1", t = "1";
  auto* count_cmd = app.add_subcommand("count", "Count Psi, A, A', D or D'");
  count_cmd->add_option("--kind", kind, "Psi | A | A' | D | D'")->required();
  count_cmd->add_option("--x", x)->required();
  count_cmd->add_option("--y", y, "defaults to x");
  count_cmd->add_option("--z", z);
  count_cmd->add_option("--t", t);
  count_cmd->callback([&] { action = [&] { return run_count(g, kind, x, y, z, t); }; });

  // buchstab-check
  std::string x_max = "2000", x_step = "7", ys = "2,3,5,sqrt,x", zs = "1,2,4", ts = "1,2,8";
  auto* buch = app.add_subcommand("buchstab-check", "Compare both A computations over a grid");
  buch->add_option("--x-max", x_max);
  buch->add_option("--x-step", x_step);
  buch->add_option("--y", ys, "comma list; 'sqrt' and 'x' are relative to x");
  buch->add_option("--z", zs);
  buch->add_option("--t", ts);
  buch->callback([&] { action = [&] { return run_buchstab(g, x_max, x_step, ys, zs, ts); }; });

  // estimate-ct
  std::string ct_t = "2", ct_xs = "1e4,1e5,1e6";
  bool squarefree = false;
  auto* est = app.add_subcommand("estimate-ct", "D(x,t) log x / x over an x grid");
  est->add_option("--t", ct_t);
  est->add_option("--x", ct_xs, "ascending comma list");
  est->add_flag("--squarefree", squarefree, "count D' instead of D");
  est->callback([&] { action = [&] { return run_estimate(g, ct_t, ct_xs, squarefree); }; });

  // chain ...
  auto* chain = app.add_subcommand("chain", "Build, verify and combine chains");
  chain->require_subcommand(1);
  std::string cx, cy, out, file1, file2, mult, connector;

  auto* build = chain->add_subcommand("build", "The recursive construction C(x, y)");
  build->add_option("--x", cx)->required();
  build->add_option("--y", cy, "defaults to x");
  build->add_option("--out", out, "file; .json selects JSON");
  build->callback([&] {
    action = [&] { return emit_chain(g, build_chain(num(cx), num(cy.empty() ? cx : cy)), out), kOk; };
  });

  auto* verify = chain->add_subcommand("verify", "Check a chain file");
  verify->add_option("file", file1)->required();
  verify->add_option("--x", cx, "context, overrides the file");
  verify->add_option("--y", cy);
  verify->callback([&] { action = [&] { return report_verify(g, load_chain(file1, cx, cy)); }; });

  auto* invert = chain->add_subcommand("invert", "Reverse a chain");
  invert->add_option("file", file1)->required();
  invert->add_option("--out", out);
  invert->callback([&] { action = [&] { return emit_chain(g, inverse(read_chain_file(file1)), out), kOk; }; });

  auto* scl = chain->add_subcommand("scale", "Multiply every entry by m");
  scl->add_option("file", file1)->required();
  scl->add_option("--m", mult)->required();
  scl->add_option("--out", out);
  scl->callback([&] {
    action = [&] { return emit_chain(g, scale(read_chain_file(file1), integer(mult, "--m")), out), kOk; };
  });

  auto* gl = chain->add_subcommand("glue", "Concatenate or collage two chains");
  gl->add_option("first", file1)->required();
  gl->add_option("second", file2)->required();
  gl->add_option("--out", out);
  gl->callback([&] {
    action = [&] { return emit_chain(g, glue(read_chain_file(file1), read_chain_file(file2)), out), kOk; };
  });

  auto* jx = chain->add_subcommand("juxtapose", "Join two chains through a connector");
  jx->add_option("first", file1)->required();
  jx->add_option("second", file2)->required();
  jx->add_option("--connector", connector)->required();
  jx->add_option("--out", out);
  jx->callback([&] {
    action = [&] {
      auto c = juxtapose(read_chain_file(file1), integer(connector, "--connector"), read_chain_file(file2));
      return emit_chain(g, c, out), kOk;
    };
  });

  // peel / connect
  std::string a, b, q = "2", px, py;
  auto* peel = app.add_subcommand("peel", "Chain from A to a power of q inside A*(x, y)");
  peel->add_option("--a", a)->required();
  peel->add_option("--q", q);
  peel->add_option("--x", px)->required();
  peel->add_option("--y", py)->required();
  peel->callback([&] { action = [&] { return run_peel(g, integer(a, "--a"), integer(q, "--q"), px, py); }; });

  auto* conn = app.add_subcommand("connect", "Chain from A to B inside A*(x, y), P(A) < P(B)");
  conn->add_option("--a", a)->required();
  conn->add_option("--b", b)->required();
  conn->add_option("--x", px)->required();
  conn->add_option("--y", py)->required();
  conn->callback([&] { action = [&] { return run_connect(g, integer(a, "--a"), integer(b, "--b"), px, py); }; });

  // exact
  std::string budget = "600", seed;
  bool no_hub = false;
  auto* ex = app.add_subcommand("exact", "Longest chain in S(x, y) by branch and bound");
  ex->add_option("--x", cx)->required();
  ex->add_option("--y", cy, "defaults to x");
  ex->add_option("--budget", budget, "seconds");
  ex->add_option("--seed", seed, "chain file used as an extra incumbent");
  ex->add_flag("--no-hub-bound", no_hub, "plain branch and bound");
  ex->callback([&] { action = [&] { return run_exact(g, cx, cy, budget, seed, no_hub); }; });

  // order
  std::string blocks;
  auto* ord = app.add_subcommand("order", "Order a partitioned set with no two neighbours in one block");
  ord->add_option("--blocks", blocks, "sizes '3,1' or elements 'a b;c'")->required();
  ord->callback([&] { action = [&] { return run_order(g, blocks); }; });

  // conjecture-f
  std::string cf_xs = "1e2,1e3,1e4,1e5";
  auto* cf = app.add_subcommand("conjecture-f", "Constructive lower bound for f(x) log x / x");
  cf->add_option("--x", cf_xs);
  cf->callback([&] { action = [&] { return run_conjecture(g, cf_xs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  g.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Text;

  try {
    code = action();
  } catch (const ChainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kUsage;
  }
  return code;
}
