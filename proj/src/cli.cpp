#include "ppadtree/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "ppadtree/brouwer.hpp"
#include "ppadtree/brouwer2d.hpp"
#include "ppadtree/circuit.hpp"
#include "ppadtree/error.hpp"
#include "ppadtree/game.hpp"
#include "ppadtree/json_io.hpp"
#include "ppadtree/slp.hpp"

namespace ppad::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw ValidationError("cannot write '" + path + "'");
  o << text;
}

// The artifact goes to --out when given, otherwise to stdout; the report
// goes to stdout, or to stderr when stdout carries the artifact.
struct Sink {
  std::string out_path;
  std::ostream& out;
  std::ostream& err;
  void artifact(const std::string& text) const {
    if (out_path.empty()) out << text << "\n";
    else write_file(out_path, text + "\n");
  }
  std::ostream& report() const { return out_path.empty() ? err : out; }
};

Rational parse_rational(const std::string& s, const std::string& what) {
  try {
    return Rational::parse(s);
  } catch (const ValidationError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

std::pair<Rational, Rational> parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("a point is written x,y");
  return {parse_rational(s.substr(0, comma), "--point"), parse_rational(s.substr(comma + 1), "--point")};
}

// name=value, where value is a rational or a bracketed comma list.
std::pair<std::string, slp::CValue> parse_param(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("--param expects name=value, got '" + s + "'");
  std::string name = s.substr(0, eq), value = s.substr(eq + 1);
  if (!value.empty() && value.front() == '[') {
    if (value.back() != ']') throw ValidationError("unterminated list in --param " + name);
    std::vector<Rational> items;
    std::string body = value.substr(1, value.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item.find_first_not_of(" \t") != std::string::npos) items.push_back(parse_rational(item, name));
    return {name, slp::CValue::of_list(std::move(items))};
  }
  return {name, slp::CValue::of(parse_rational(value, name))};
}

b2d::ReductionParams make_params(int n, int k, const std::string& eps, const std::string& eps_prime, int digits) {
  std::optional<Rational> ep;
  if (!eps_prime.empty()) ep = parse_rational(eps_prime, "--eps-prime");
  return b2d::ReductionParams::make(n, k, parse_rational(eps, "--eps"), digits, ep);
}

game::GateConstraintSystem load_system(const std::string& path) {
  std::string text = read_file(path);
  json j = parse_json_text(text);
  if (j.is_object() && j.contains("gates")) return game::system_from_json(text);
  circuit::SyncCircuit c = circuit::from_json(text);
  if (c.bound == Rational(1)) return game::system_from_circuit(c);
  return game::add_loopback(c);
}

std::optional<Rational> parse_M(const std::string& s) {
  if (s.empty() || s == "auto") return std::nullopt;
  return parse_rational(s, "--M");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-rational tools for the SLP, circuit, Brouwer and polymatrix game pipeline", "ppadtree"};
  app.require_subcommand(1);

  std::string in_path, in_path2, out_path, eps = "1/5", eps_prime, M_mode = "auto", point, assignment, system_out;
  std::vector<std::string> params;
  int n = 0, k = 5, digits = 5, resolution = 64, seed = 1, random = 0, threads = 0;
  bool thick = false;

  auto* compile = app.add_subcommand("compile", "Compile an SLP file to a synchronous circuit");
  compile->add_option("slp", in_path, "SLP source")->required();
  compile->add_option("--param", params, "Parameter binding name=value or name=[a,b,...]");
  compile->add_option("--out", out_path, "Circuit JSON destination");

  auto* thicken = app.add_subcommand("thicken", "Embed a DiscreteBrouwer netlist into an eps-thick instance");
  thicken->add_option("bnet", in_path, "Netlist")->required();
  thicken->add_option("--eps", eps, "Border thickness");
  thicken->add_option("--out", out_path, "Netlist destination");

  auto* reduce = app.add_subcommand("reduce", "Build the 2D-Brouwer circuit for a netlist");
  reduce->add_option("bnet", in_path, "Netlist")->required();
  reduce->add_option("--k", k, "Number of samples");
  reduce->add_option("--eps", eps, "Border thickness");
  reduce->add_option("--eps-prime", eps_prime, "Residual gap target");
  reduce->add_option("--sqrt2-prec", digits, "Decimal digits of sqrt(2) carried by R");
  reduce->add_flag("--thick", thick, "The netlist already has the thick boundary");
  reduce->add_option("--out", out_path, "Circuit JSON destination");

  auto* gamec = app.add_subcommand("game", "Build the polymatrix game for a circuit");
  gamec->add_option("circuit", in_path, "Circuit or constraint system JSON")->required();
  gamec->add_option("--M", M_mode, "Hide-and-seek stake, or auto");
  gamec->add_option("--system-out", system_out, "Also write the constraint system here");
  gamec->add_option("--out", out_path, "Game JSON destination");

  auto* eq = app.add_subcommand("equilibrium", "Construct the equilibrium for a fixed point");
  eq->add_option("system", in_path, "Circuit or constraint system JSON")->required();
  auto* eq_assign = eq->add_option("--assignment", assignment, "Gate values JSON");
  auto* eq_point = eq->add_option("--point", point, "Fixed point x,y of the circuit");
  eq_assign->excludes(eq_point);
  eq->add_option("--M", M_mode, "Hide-and-seek stake, or auto");
  eq->add_option("--out", out_path, "Profile JSON destination");

  auto* verify = app.add_subcommand("verify", "Exact regrets of a profile");
  verify->add_option("game", in_path, "Game JSON")->required();
  verify->add_option("profile", in_path2, "Profile JSON")->required();
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* search = app.add_subcommand("search", "Residual table over a grid");
  search->add_option("circuit", in_path, "Circuit JSON")->required();
  search->add_option("--resolution", resolution, "Grid divisions per axis (power of two)");
  search->add_option("--threads", threads, "Worker threads (0 = all cores)");
  search->add_option("--out", out_path, "CSV destination");

  auto* geom = app.add_subcommand("check-geometry", "Minimum norm over the displacement segments");
  geom->add_option("--eps", eps, "Border thickness");
  geom->add_option("--sqrt2-prec", digits, "Decimal digits of sqrt(2) carried by R");

  auto* samples = app.add_subcommand("check-samples", "Count poorly positioned samples");
  samples->add_option("--n", n, "Bits per coordinate")->required();
  samples->add_option("--k", k, "Number of samples");
  samples->add_option("--eps", eps, "Border thickness");
  samples->add_option("--point", point, "Single point x,y");
  samples->add_option("--resolution", resolution, "Exhaustive grid divisions per axis");
  samples->add_option("--random", random, "Additional random points");
  samples->add_option("--seed", seed, "Seed for random points");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  Sink sink{out_path, out, err};

  if (*compile) {
    slp::ConstEnv env;
    for (const auto& p : params) env.insert(parse_param(p));
    slp::SlpProgram prog = slp::parse_slp(read_file(in_path));
    slp::FlatSlp flat = slp::expand(prog, b2d::macro_library(), env);
    auto live = slp::liveness(flat);
    circuit::SyncCircuit c = circuit::compile(flat, live);
    sink.artifact(circuit::to_json(c));
    sink.report() << "lines: " << flat.lines.size() << "\nmax_live: " << live.max_live << "\nwidth: " << c.width()
                  << "\ndepth: " << c.depth() << "\n";
    return kOk;
  }

  if (*thicken) {
    brouwer::BoolCircuit bc = brouwer::parse_bnet(read_file(in_path));
    if (bc.num_inputs % 2 != 0) throw ValidationError("a netlist needs an even number of inputs");
    brouwer::DiscreteBrouwerInstance inst{bc.num_inputs / 2, bc, brouwer::Boundary::original()};
    auto emb = brouwer::thicken(inst, parse_rational(eps, "--eps"));
    sink.artifact(brouwer::to_bnet(emb.instance.circuit));
    sink.report() << "n: " << inst.n << "\nthick_n: " << emb.instance.n << "\noffset: " << emb.x0 << " " << emb.y0
                  << "\ngates: " << emb.instance.circuit.gates.size() << "\n";
    return kOk;
  }

  if (*reduce) {
    brouwer::BoolCircuit bc = brouwer::parse_bnet(read_file(in_path));
    if (bc.num_inputs % 2 != 0) throw ValidationError("a netlist needs an even number of inputs");
    const Rational e = parse_rational(eps, "--eps");
    brouwer::DiscreteBrouwerInstance inst{bc.num_inputs / 2, bc, brouwer::Boundary::thick(e)};
    if (!thick) {
      inst.boundary = brouwer::Boundary::original();
      inst = brouwer::thicken(inst, e).instance;
    }
    auto p = make_params(inst.n, k, eps, eps_prime, digits);
    circuit::SyncCircuit c = b2d::build_reduction(inst, p);
    std::map<std::string, std::string> prov{{"tool", "ppadtree reduce"},
                                            {"n", std::to_string(bc.num_inputs / 2)},
                                            {"thick_n", std::to_string(p.n)},
                                            {"k", std::to_string(p.k)},
                                            {"eps", p.eps.str()},
                                            {"eps_prime", p.eps_prime.str()},
                                            {"L", p.L.str()},
                                            {"R", p.R.str()},
                                            {"sqrt2_prec", std::to_string(p.sqrt2_digits)},
                                            {"delta", p.delta().str()}};
    sink.artifact(circuit::to_json(c, prov));
    sink.report() << "width: " << c.width() << "\ndepth: " << c.depth() << "\n";
    return kOk;
  }

  if (*gamec) {
    auto sys = load_system(in_path);
    auto g = game::build_game(sys, parse_M(M_mode));
    if (!system_out.empty()) write_file(system_out, game::system_to_json(sys) + "\n");
    sink.artifact(game::game_to_json(g));
    sink.report() << "levels: " << sys.n << "\nplayers: " << g.players.size() << "\nM: " << g.M.str() << "\n";
    return kOk;
  }

  if (*eq) {
    auto sys = load_system(in_path);
    auto g = game::build_game(sys, parse_M(M_mode));
    game::GateValues values;
    if (!assignment.empty()) {
      values = game::values_from_json(read_file(assignment));
    } else if (!point.empty()) {
      auto p = parse_point(point);
      if (sys.original) p = {p.first / Rational(10), p.second / Rational(10)};
      values = game::assignment_from_point(sys, p);
    } else {
      throw ValidationError("equilibrium needs --assignment or --point");
    }
    auto s = game::construct_equilibrium(sys, g, values);
    sink.artifact(game::profile_to_json(g, s));
    return kOk;
  }

  if (*verify) {
    auto g = game::game_from_json(read_file(in_path));
    auto s = game::profile_from_json(g, read_file(in_path2));
    auto rep = game::verify_regret(g, s, threads);
    for (std::size_t i = 0; i < g.players.size(); ++i) out << g.players[i].id << ": " << rep.regret[i].str() << "\n";
    out << "is_nash: " << (rep.is_nash ? "true" : "false") << "\n";
    if (!rep.is_nash) {
      out << "violators:";
      for (int v : rep.violators) out << " " << g.players[static_cast<std::size_t>(v)].id;
      out << "\n";
    }
    return kOk;
  }

  if (*search) {
    auto c = circuit::from_json(read_file(in_path));
    auto pts = b2d::grid_search(c, resolution, threads);
    std::ostringstream csv;
    csv << "x,y,residual";
    for (const auto& p : pts) csv << "\n" << p.x.str() << "," << p.y.str() << "," << p.residual.str();
    sink.artifact(csv.str());
    if (!pts.empty()) sink.report() << "min_residual: " << pts.front().residual.str() << "\n";
    return kOk;
  }

  if (*geom) {
    auto p = make_params(2, 5, eps, "", digits);
    auto rep = b2d::displacement_geometry_check(p);
    const Rational target = (p.R - Rational(1)) * p.eps;
    out << "R: " << p.R.str() << "\n";
    const char* names[] = {"pair_1_2", "pair_1_3", "pair_2_3"};
    for (std::size_t i = 0; i < 3; ++i) out << names[i] << ": " << rep.pair_min[i].str() << "\n";
    out << "minimum: " << rep.minimum.str() << " (" << rep.minimum.to_double() << ")\n";
    out << "target: " << target.str() << " (" << target.to_double() << ")\n";
    return kOk;
  }

  if (*samples) {
    auto p = make_params(n, k, eps, "", 5);
    int worst = 0;
    long count = 0;
    auto visit = [&](const std::pair<Rational, Rational>& q) {
      worst = std::max(worst, b2d::count_poorly_positioned(q, p));
      ++count;
    };
    if (!point.empty()) {
      visit(parse_point(point));
    } else {
      if (resolution < 1) throw ValidationError("--resolution must be positive");
      for (int i = 0; i <= resolution; ++i)
        for (int j = 0; j <= resolution; ++j) visit({Rational(i, resolution), Rational(j, resolution)});
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
      std::uniform_int_distribution<long> den(1, 1000000);
      for (int r = 0; r < random; ++r) {
        long d1 = den(rng), d2 = den(rng);
        long n1 = std::uniform_int_distribution<long>(0, d1)(rng);
        long n2 = std::uniform_int_distribution<long>(0, d2)(rng);
        visit({Rational(n1, d1), Rational(n2, d2)});
      }
    }
    out << "L: " << p.L.str() << "\npoints: " << count << "\nmax_poorly_positioned: " << worst
        << "\nat_most_two: " << (worst <= 2 ? "true" : "false") << "\n";
    return kOk;
  }
  return kInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace ppad::cli
