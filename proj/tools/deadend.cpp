// deadend: reproducible word-metric experiments on the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "deadend/io.hpp"

namespace fs = std::filesystem;
using namespace deadend;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Options {
  std::string spec;
  std::string dfa;
  long long radius = 6;
  std::optional<long long> cap;
  long long min_depth = 2;
  long long n_max = 4;
  std::string out;
  std::string format = "csv";
};

void emit(const Options& o, const std::string& name, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  fs::create_directories(o.out);
  const auto path = fs::path(o.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
  f << body;
}

json metadata(const Options& o, const GroupSpecFile* spec) {
  json m = {{"radius", o.radius}};
  if (spec) {
    m["kind"] = spec->kind;
    m["spec_hash"] = spec->hash;
  }
  if (o.cap) m["cap"] = *o.cap;
  m["budget"] = element_budget_from_env();
  return m;
}

int cmd_ball(const Options& o) {
  const auto spec = load_spec_file(o.spec);
  const auto group = make_group(spec);
  return std::visit(
      [&](const auto& g) {
        const auto b = ball(g, o.radius);
        if (o.format == "json") {
          json j = metadata(o, &spec);
          j["ball"] = to_json(g, b);
          emit(o, "ball.json", j.dump(2) + "\n");
        } else {
          emit(o, "spheres.csv", spheres_csv(b));
        }
        return kOk;
      },
      group);
}

int cmd_depth_scan(const Options& o) {
  const auto spec = load_spec_file(o.spec);
  const auto group = make_group(spec);
  return std::visit(
      [&](const auto& g) {
        const auto b = ball(g, o.radius);
        const auto found = deadend_scan(g, b, o.min_depth, o.cap);
        if (o.format == "json") {
          json j = metadata(o, &spec);
          j["min_depth"] = o.min_depth;
          j["rows"] = json::array();
          for (const auto& r : found) j["rows"].push_back(to_json(g, r));
          emit(o, "deadends.json", j.dump(2) + "\n");
        } else {
          std::string csv = "element,distance,depth\n";
          for (const auto& r : found) {
            const std::string d = (r.exceeds_cap ? ">=" : "") + std::to_string(r.depth);
            csv += csv_field(g.render(r.element)) + "," + std::to_string(r.distance_from_identity) + "," + d + "\n";
          }
          emit(o, "deadends.csv", csv);
        }
        return kOk;
      },
      group);
}

int cmd_heis_family(const Options& o) {
  const long long cap = o.cap.value_or(8);
  Heisenberg H;
  std::vector<HeisFamilyRow> rows;
  if (o.n_max >= 3) {
    const auto b = ball(H, 4 * o.n_max + 2 + cap);
    for (long long n = 3; n <= o.n_max; ++n) rows.push_back(heis_family(n, b, cap));
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.ok();
  if (o.format == "json") {
    json j = {{"n_max", o.n_max}, {"cap", cap}, {"rows", json::array()}, {"ok", ok}};
    for (const auto& r : rows) j["rows"].push_back(to_json(r));
    emit(o, "heis_family.json", j.dump(2) + "\n");
  } else {
    std::string csv = "n,distance,depth_lower_bound,bfs_depth\n";
    for (const auto& r : rows) {
      csv += std::to_string(r.n) + "," + std::to_string(r.distance) + "," + std::to_string(r.bound) + "," +
             (r.report.exceeds_cap ? ">=" : "") + std::to_string(r.report.depth) + "\n";
    }
    emit(o, "heis_family.csv", csv);
  }
  return ok ? kOk : kViolation;
}

int cmd_sol_gap(const Options& o) {
  const auto spec = load_spec_file(o.spec);
  if (spec.kind != "sol") throw Error(ErrorKind::InvalidInput, "sol-gap needs a sol spec");
  const auto G = std::get<SolGroup>(make_group(spec));
  const long long l_cap = o.cap.value_or(4 * o.radius + 8);
  const auto b = ball(G, o.radius);
  MinRepSolver solver(G.R());
  const auto rep = bdiff_gap(b, solver, l_cap);
  if (o.format == "json") {
    json j = metadata(o, &spec);
    j["max_gap"] = rep.max_gap;
    j["violations"] = rep.violations;
    j["skipped"] = rep.skipped;
    j["rows"] = json::array();
    for (const auto& r : rep.rows) {
      j["rows"].push_back({{"g", element_json(G, r.g)}, {"distance", r.distance}, {"norm", r.norm}, {"gap", r.gap()}});
    }
    emit(o, "sol_gap.json", j.dump(2) + "\n");
  } else {
    std::string csv = "g,distance,norm,gap\n";
    for (const auto& r : rep.rows) {
      csv += csv_field(G.render(r.g)) + "," + std::to_string(r.distance) + "," + std::to_string(r.norm) + "," +
             std::to_string(r.gap()) + "\n";
    }
    emit(o, "sol_gap.csv", csv);
  }
  std::cerr << "max gap " << rep.max_gap << ", violations " << rep.violations << ", skipped " << rep.skipped << "\n";
  return rep.violations == 0 ? kOk : kViolation;
}

int cmd_dfa(const Options& o) {
  const auto spec = load_spec_file(o.spec);
  const auto group = make_group(spec);
  const auto dfa_json = parse_json(read_file(o.dfa));
  return std::visit(
      [&](const auto& g) {
        const auto dfa = dfa_from_json(dfa_json, g.alphabet());
        const auto b = ball(g, o.radius);
        const auto lang = verify_language(dfa, g, b);
        json j = metadata(o, &spec);
        j["dfa_hash"] = fnv1a_hex(dfa_json.dump());
        j["states"] = dfa.states();
        j["sound"] = lang.sound;
        j["complete"] = lang.complete;
        j["counterexample"] = lang.counterexample ? json(g.alphabet().render(*lang.counterexample)) : json(nullptr);
        j["missing"] = lang.missing ? element_json(g, *lang.missing) : json(nullptr);
        bool ok = lang.sound && lang.complete;
        if (ok) {
          const auto rb = regbound_check(dfa, g, o.radius);
          j["max_depth"] = rb.max_depth;
          j["bound"] = rb.bound;
          j["checked"] = rb.checked;
          j["violations"] = rb.violations;
          ok = rb.violations == 0;
        }
        emit(o, "dfa_report.json", j.dump(2) + "\n");
        return ok ? kOk : kViolation;
      },
      group);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dead-end depth experiments on Cayley graphs"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c, bool needs_spec) {
    auto* s = c->add_option("--spec", o.spec, "group spec JSON file");
    if (needs_spec) s->required()->check(CLI::ExistingFile);
    c->add_option("--radius", o.radius, "ball radius")->check(CLI::NonNegativeNumber);
    c->add_option("--out", o.out, "output directory (stdout when absent)");
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* ball_cmd = app.add_subcommand("ball", "sphere sizes of a ball");
  add_common(ball_cmd, true);

  auto* scan_cmd = app.add_subcommand("depth-scan", "elements of depth at least --min-depth");
  add_common(scan_cmd, true);
  scan_cmd->add_option("--min-depth", o.min_depth, "depth threshold")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--cap", o.cap, "depth search cap");

  auto* heis_cmd = app.add_subcommand("heis-family", "depth of (0,0,n^2+1) in the Heisenberg group");
  heis_cmd->add_option("--n-max", o.n_max, "largest n")->check(CLI::NonNegativeNumber);
  heis_cmd->add_option("--cap", o.cap, "depth search cap (default 8)")->check(CLI::PositiveNumber);
  heis_cmd->add_option("--out", o.out, "output directory");
  heis_cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* gap_cmd = app.add_subcommand("sol-gap", "pseudo-norm minus word length over a Sol ball");
  add_common(gap_cmd, true);
  gap_cmd->add_option("--cap", o.cap, "length cap for minimal representatives");

  auto* dfa_cmd = app.add_subcommand("dfa", "verify a geodesic DFA and its depth bound");
  add_common(dfa_cmd, true);
  dfa_cmd->add_option("--dfa", o.dfa, "DFA JSON file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*ball_cmd) return cmd_ball(o);
    if (*scan_cmd) return cmd_depth_scan(o);
    if (*heis_cmd) return cmd_heis_family(o);
    if (*gap_cmd) return cmd_sol_gap(o);
    if (*dfa_cmd) return cmd_dfa(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
