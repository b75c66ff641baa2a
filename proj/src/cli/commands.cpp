#include "orbitforge/cli.hpp"
#include "orbitforge/modular.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace orbitforge::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

IntegerMap parse_map(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("expected 'power <m> <k>' or 'quad <a> <b> <c>'");
  if (args[0] == "power") {
    if (args.size() != 3) throw UsageError("usage: power <m> <k>");
    Int m = parse_int(args[1]);
    if (m < 1 || !m.fits_slong_p()) throw UsageError("degree m must be a positive integer");
    return PowerMap{m.get_si(), parse_int(args[2])};
  }
  if (args[0] == "quad") {
    if (args.size() != 4) throw UsageError("usage: quad <a> <b> <c>");
    Int a = parse_int(args[1]);
    if (a == 0) throw UsageError("quadratic coefficient a must be nonzero");
    return QuadMap{a, parse_int(args[2]), parse_int(args[3])};
  }
  throw UsageError("unknown map family '" + args[0] + "' (expected power or quad)");
}

std::string brief(const OrbitClassification& c) {
  auto pts = [](const std::vector<Int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "]";
  };
  std::string s = "fixed=" + pts(c.fixed_points) + " 2-cycles=[";
  for (std::size_t i = 0; i < c.two_cycles.size(); ++i) s += (i ? ", " : "") + pts(c.two_cycles[i].points());
  s += "]";
  if (!c.higher_cycles.empty()) s += " higher=" + std::to_string(c.higher_cycles.size());
  return s;
}

std::vector<CrossCheckReport> run_cross_checks(const std::vector<IntegerMap>& maps, unsigned workers) {
  std::vector<CrossCheckReport> out(maps.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < maps.size();) out[i] = cross_check(maps[i]);
  };
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(1, maps.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_modulus_range(const std::string& spec) {
  auto dots = spec.find("..");
  Int lo = parse_int(spec.substr(0, dots));
  Int hi = dots == std::string::npos ? lo : parse_int(spec.substr(dots + 2));
  if (lo < 2 || hi < lo || !hi.fits_ulong_p()) throw UsageError("modulus range must satisfy 2 <= lo <= hi");
  return {lo.get_ui(), hi.get_ui()};
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"orbitforge: periodic integer orbits of x^m - k and a x^2 + b x + c"};
  app.name("orbitforge");
  app.require_subcommand(1);

  std::string format = "table";
  std::string out_path;
  unsigned workers = default_workers();
  std::size_t cap = 10000;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv", "svg"}));
  app.add_option("--out", out_path, "Write output to PATH instead of stdout");
  app.add_option("--workers", workers, "Worker threads for grid commands (env ORBITFORGE_WORKERS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap", cap, "Iteration cap for orbit traces")->check(CLI::PositiveNumber);

  std::vector<std::string> map_args;

  auto* classify = app.add_subcommand("classify", "Closed-form periodic orbits of one map")->fallthrough();
  classify->add_option("map", map_args, "power <m> <k> | quad <a> <b> <c>")->required();

  std::string seed_text = "0";
  auto* orbit = app.add_subcommand("orbit", "Trace one seed until it cycles or escapes")->fallthrough();
  orbit->add_option("map", map_args, "power <m> <k> | quad <a> <b> <c>")->required();
  orbit->add_option("--seed", seed_text, "Initial value")->required();

  std::string family, grid_m, grid_k, grid_a, grid_b, grid_c;
  auto* oracle = app.add_subcommand("oracle", "Cross-check the classifier against brute force over a grid")
                     ->fallthrough();
  oracle->add_option("family", family, "power | quad")->required()->check(CLI::IsMember({"power", "quad"}));
  oracle->add_option("--m", grid_m, "Degrees (power)");
  oracle->add_option("--k", grid_k, "Shifts (power)");
  oracle->add_option("--a", grid_a, "Leading coefficients (quad, 0 skipped)");
  oracle->add_option("--b", grid_b, "Linear coefficients (quad)");
  oracle->add_option("--c", grid_c, "Constant terms (quad)");

  std::string bounds_k;
  int digits = 6;
  bool odd_b = false;
  auto* bounds = app.add_subcommand("bounds", "Bounding curves beta_k, gamma_k, beta_k - 1")->fallthrough();
  bounds->add_option("--k", bounds_k, "k values (lo..hi or list)")->required();
  bounds->add_option("--digits", digits, "Certified fractional digits");
  bounds->add_flag("--odd-b", odd_b, "Evaluate B_q, C_q at q = k - 1/4");

  std::string modulus_range, checkpoint;
  std::uint64_t stride = 1;
  auto* modscan = app.add_subcommand("modscan", "Cycle structure of the map over Z_M for a range of M")
                      ->fallthrough();
  modscan->add_option("map", map_args, "power <m> <k> | quad <a> <b> <c>")->required();
  modscan->add_option("--M", modulus_range, "Moduli lo..hi")->required();
  modscan->add_option("--stride", stride, "Modulus step")->check(CLI::PositiveNumber);
  modscan->add_option("--checkpoint", checkpoint, "Resume file");

  std::vector<std::string> coeff_text;
  auto* lattice = app.add_subcommand("latticecheck", "Does a rational polynomial map lZ into itself?")
                      ->fallthrough();
  lattice->add_option("coeffs", coeff_text, "a0 a1 ... am (integers or p/q)")->required();

  auto* conjugate = app.add_subcommand("conjugate", "Conjugacy of a x^2 + b x + c onto x^2 - q")->fallthrough();
  conjugate->add_option("coeffs", map_args, "a b c")->required()->expected(3);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  std::ostringstream body;
  int status = exit_ok;
  try {
    if (classify->parsed()) {
      const IntegerMap f = parse_map(map_args);
      const auto c = orbitforge::classify(f);
      if (format == "json")
        body << classification_to_json(f, c).dump(2) << '\n';
      else
        body << render_table(f, c);

    } else if (orbit->parsed()) {
      const IntegerMap f = parse_map(map_args);
      const auto eb = escape_bound(f);
      const auto t = iterate_with_escape(f, eb, parse_int(seed_text), cap);
      if (format == "json")
        body << trace_to_json(f, eb, t).dump(2) << '\n';
      else
        body << render_table(f, eb, t);

    } else if (oracle->parsed()) {
      std::vector<IntegerMap> maps;
      if (family == "power") {
        if (grid_m.empty() || grid_k.empty()) throw UsageError("oracle power needs --m and --k");
        for (const auto& m : parse_grid(grid_m)) {
          if (m < 1 || !m.fits_slong_p()) throw UsageError("degrees must be positive");
          for (const auto& k : parse_grid(grid_k)) maps.emplace_back(PowerMap{m.get_si(), k});
        }
      } else {
        if (grid_a.empty() || grid_b.empty() || grid_c.empty()) throw UsageError("oracle quad needs --a, --b and --c");
        const auto bs = parse_grid(grid_b), cs = parse_grid(grid_c);
        for (const auto& a : parse_grid(grid_a)) {
          if (a == 0) continue;
          for (const auto& b : bs)
            for (const auto& c : cs) maps.emplace_back(QuadMap{a, b, c});
        }
      }
      const auto reports = run_cross_checks(maps, workers);
      std::size_t agree = 0, anomalies = 0, with_two = 0;
      Json results = Json::array();
      for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& r = reports[i];
        agree += r.agree;
        anomalies += r.anomaly;
        with_two += !r.oracle.two_cycles.empty();
        if (format == "json") {
          Json row;
          row["map"] = map_to_json(maps[i]);
          row["agree"] = r.agree;
          row["anomaly"] = r.anomaly;
          row["diff"] = r.diff;
          row["oracle"] = classification_to_json(maps[i], r.oracle);
          results.push_back(row);
        } else {
          body << (r.anomaly ? "ANOMALY " : r.agree ? "agree   " : "DIFF    ") << pad(describe(maps[i]), 24) << ' '
               << (r.agree ? brief(r.oracle) : r.diff) << '\n';
        }
      }
      const std::size_t disagree = maps.size() - agree;
      if (format == "json") {
        Json doc;
        doc["results"] = results;
        doc["summary"] = {{"maps", maps.size()},
                          {"agree", agree},
                          {"disagree", disagree},
                          {"anomalies", anomalies},
                          {"with_two_cycles", with_two}};
        body << doc.dump(2) << '\n';
      } else {
        body << "summary: " << maps.size() << " maps, " << agree << " agree, " << disagree << " disagree, "
             << anomalies << " anomalies, " << with_two << " with 2-cycles\n";
      }
      if (disagree > 0) status = exit_disagreement;

    } else if (bounds->parsed()) {
      if (digits <= 0) throw UsageError("--digits must be positive");
      const auto pts = bounding_curve(parse_grid(bounds_k), digits, odd_b);
      if (format == "svg") {
        body << curves_svg(pts, odd_b);
      } else if (format == "csv") {
        body << curves_csv(pts);
      } else if (format == "json") {
        Json rows = Json::array();
        for (const auto& p : pts) {
          Json r;
          r["param"] = to_string(p.param);
          r["beta"] = p.beta ? Json(p.beta->value) : Json(nullptr);
          r["gamma"] = p.gamma ? Json(p.gamma->value) : Json(nullptr);
          r["beta_minus_one"] = p.beta_minus_one ? Json(p.beta_minus_one->value) : Json(nullptr);
          r["marked"] = p.marked;
          r["j"] = p.j ? Json(to_string(*p.j)) : Json(nullptr);
          r["kind"] = p.kind;
          Json band = Json::array();
          for (const auto& b : p.band) band.push_back(to_string(b));
          r["band"] = band;
          rows.push_back(r);
        }
        body << rows.dump(2) << '\n';
      } else {
        const std::size_t w = static_cast<std::size_t>(digits) + 6;
        body << pad("param", 10) << pad("beta", w) << pad("gamma", w) << pad("beta-1", w) << "band        marked\n";
        for (const auto& p : pts) {
          std::string band;
          for (const auto& b : p.band) band += (band.empty() ? "" : ",") + to_string(b);
          body << pad(to_string(p.param), 10) << pad(p.beta ? p.beta->value : "-", w)
               << pad(p.gamma ? p.gamma->value : "-", w) << pad(p.beta_minus_one ? p.beta_minus_one->value : "-", w)
               << (p.marked ? pad(band.empty() ? "-" : band, 12) : (band.empty() ? "-" : band));
          if (p.marked) body << p.kind << " j=" << to_string(*p.j);
          body << '\n';
        }
      }

    } else if (modscan->parsed()) {
      const IntegerMap f = parse_map(map_args);
      const auto [lo, hi] = parse_modulus_range(modulus_range);
      ScanOptions opts;
      opts.first = lo;
      opts.last = hi;
      opts.stride = stride;
      opts.workers = workers;
      if (!checkpoint.empty()) opts.checkpoint = checkpoint;
      const auto rows = max_cycle_scan(f, opts);
      if (format == "json") {
        Json doc = Json::array();
        for (const auto& r : rows)
          doc.push_back({{"modulus", r.modulus},
                         {"max_cycle_length", r.max_cycle_length},
                         {"cycle_count", r.cycle_count},
                         {"nodes_on_cycles", r.nodes_on_cycles},
                         {"max_tail_length", r.max_tail_length}});
        body << doc.dump(2) << '\n';
      } else {
        body << scan_csv(rows);
      }

    } else if (lattice->parsed()) {
      std::vector<Rat> coeffs;
      for (const auto& t : coeff_text) coeffs.push_back(parse_rat(t));
      const RationalPoly p(coeffs);
      const auto cert = lattice_check(p);
      std::vector<Rat> sample;
      if (cert.holds) {
        Rat x{cert.l};
        sample.push_back(x);
        for (int i = 0; i < 5; ++i) sample.push_back(x = eval(p, x));
      }
      if (format == "json") {
        Json j;
        Json cs = Json::array();
        for (const auto& c : p.coeffs()) cs.push_back(to_string(c));
        j["coefficients"] = cs;
        j["l"] = to_string(cert.l);
        j["holds"] = cert.holds;
        j["reason"] = cert.reason;
        Json orbit_json = Json::array();
        for (const auto& s : sample) orbit_json.push_back(to_string(s));
        j["sample_orbit"] = orbit_json;
        body << j.dump(2) << '\n';
      } else {
        body << "coefficients: ";
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) body << (i ? " " : "") << "a" << i << "=" << to_string(p[i]);
        body << "\nl = " << to_string(cert.l) << "\n" << (cert.holds ? "holds: " : "fails: ") << cert.reason << '\n';
        if (cert.holds) {
          body << "sample orbit from " << to_string(cert.l) << ":";
          for (const auto& s : sample) body << ' ' << to_string(s);
          body << '\n';
        }
      }

    } else if (conjugate->parsed()) {
      const IntegerMap f = parse_map({"quad", map_args.at(0), map_args.at(1), map_args.at(2)});
      const auto c = conjugacy_of_quad(std::get<QuadMap>(f));
      if (format == "json") {
        Json j;
        j["map"] = map_to_json(f);
        j["scale"] = to_string(c.scale);
        j["offset"] = to_string(c.offset);
        j["q"] = to_string(c.q);
        body << j.dump(2) << '\n';
      } else {
        body << "map:    " << describe(f) << "\nscale:  " << to_string(c.scale) << "\noffset: " << to_string(c.offset)
             << "\nq:      " << to_string(c.q) << "\nr = " << to_string(c.scale) << " s + " << to_string(c.offset)
             << " carries orbits onto x^2 - " << to_string(c.q) << '\n';
      }
    }
  } catch (const CheckpointError& e) {
    err << "checkpoint error: " << e.what() << '\n';
    return exit_io;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_disagreement;
  }

  if (out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    file << body.str();
    if (!file) {
      err << "i/o error: cannot write " << out_path << '\n';
      return exit_io;
    }
  }
  return status;
}

}  // namespace orbitforge::cli
