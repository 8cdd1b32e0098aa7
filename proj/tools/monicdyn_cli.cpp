#include "monicdyn/gcd.hpp"
#include "monicdyn/json_io.hpp"
#include "monicdyn/resultant.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace monicdyn;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kUnknown = 3;
constexpr int kDefect = 4;

struct Options {
  std::string map_file;
  std::string quad;
  std::string divisor_file;
  int max_steps = 8;
  long precision = kDefaultPrecision;
  long box = -1;
  int threads = 0;
  std::string checkpoint;
  std::string out;
  std::string format;
  std::uint64_t chunk_size = 1024;
  std::optional<std::uint64_t> stop_after_chunks;
  std::vector<std::string> tuples;
  std::string in_file;
  int N = 2;
  int d = 2;
};

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    out.push_back(item);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  const auto e = s.find_last_not_of(" \t\r\"");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::array<Rational, 4> parse_quad(const std::string &text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4)
    throw ParseError("--quad expects a,b,c,d");
  std::array<Rational, 4> q;
  for (int i = 0; i < 4; ++i)
    q[i] = parse_rational(trim(parts[i]));
  return q;
}

Quad integer_quad(const std::string &text) {
  const auto q = parse_quad(text);
  Quad t;
  for (int i = 0; i < 4; ++i) {
    if (q[i].get_den() != 1 || !q[i].get_num().fits_slong_p())
      throw ParseError("tuple entries must be integers: " + text);
    t[i] = q[i].get_num().get_si();
  }
  return t;
}

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw ParseError(path + ": " + e.what());
  }
}

PolyMap load_map(const Options &o) {
  if (o.map_file.empty() == o.quad.empty())
    throw ParseError("give exactly one of --map and --quad");
  if (!o.quad.empty()) {
    const auto q = parse_quad(o.quad);
    return PolyMap::quadratic(q[0], q[1], q[2], q[3]);
  }
  return map_from_json(read_json(o.map_file));
}

Divisor load_divisor(const Options &o, const PolyMap &f) {
  if (o.divisor_file.empty())
    return critical_divisor(f);
  const Divisor D = divisor_from_json(read_json(o.divisor_file));
  if (D.nvars() != f.nvars())
    throw ParseError("divisor and map live in different dimensions");
  return D;
}

Budgets budgets(const Options &o) { return Budgets{o.max_steps, static_cast<mpfr_prec_t>(o.precision)}; }

void emit(const Options &o, const std::string &text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  out << text;
  if (!out)
    throw std::runtime_error("cannot write " + o.out);
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

std::string interval_text(const Interval &I) { return I.to_string(12); }

std::string portrait_text(const Portrait &P) {
  std::ostringstream s;
  for (std::size_t k = 0; k < P.components.size(); ++k)
    s << "  D" << k + 1 << ": {" << P.components[k].divisor.form().to_string() << " = 0}\n";
  for (const auto &chain : P.chains) {
    s << " ";
    for (std::size_t i = 0; i < chain.size(); ++i)
      s << (i ? " -> " : " ") << "D" << chain[i] + 1;
    s << "\n";
  }
  return s.str();
}

int cmd_jacobian(const Options &o) {
  const PolyMap f = load_map(o);
  const Form J = jacobian_form(f);
  const Divisor C = critical_divisor(f);
  if (o.format == "json")
    emit(o, dump({{"map", to_json(f)}, {"jacobian", to_json(J)}, {"critical_divisor", to_json(C.form())}}));
  else
    emit(o, "J_f = " + J.to_string() + "\nC_f = " + C.form().to_string() + "\n");
  return kOk;
}

int cmd_pushforward(const Options &o) {
  const PolyMap f = load_map(o);
  const Divisor D = load_divisor(o, f);
  const Divisor E = pushforward(f, D);
  if (o.format == "json")
    emit(o, dump(to_json(E.form())));
  else
    emit(o, "f_*D = " + E.form().to_string() + "\ndegree " + std::to_string(E.degree()) + "\n");
  return kOk;
}

int cmd_orbit(const Options &o) {
  const PolyMap f = load_map(o);
  const OrbitRecord rec = orbit_certify(f, load_divisor(o, f), o.max_steps);
  const bool done = rec.status == OrbitStatus::PreperiodicProvenAt;
  if (o.format == "json") {
    emit(o, dump(to_json(rec)));
  } else {
    std::ostringstream s;
    for (const auto &st : rec.steps)
      s << "R_" << st.n << " (degree " << st.degree << "): " << st.radical.form().to_string() << "\n";
    s << (done ? "preperiodic, proven at m = " : "inconclusive after ") << rec.m << (done ? "\n" : " iterates\n");
    emit(o, s.str());
  }
  return done ? kOk : kUnknown;
}

int cmd_classify(const Options &o) {
  const PolyMap f = load_map(o);
  const Certificate c = classify(f, budgets(o));
  std::optional<Portrait> P;
  if (c.verdict == Verdict::PcfProven)
    P = portrait(f, c.radicals);
  if (o.format == "json") {
    json j = to_json(c);
    if (P)
      j["portrait"] = to_json(*P);
    emit(o, dump(j));
  } else {
    std::ostringstream s;
    s << "verdict: " << to_string(c.verdict) << "\n";
    switch (c.verdict) {
    case Verdict::PcfProven:
      s << "orbit depth: " << c.step << "\n" << "portrait:\n" << portrait_text(*P);
      break;
    case Verdict::NotPcfProven:
      s << "place: " << c.place->to_string() << "\nstep: " << c.step << "\n";
      if (!c.place->is_arch())
        s << "witness: G = " << to_string(c.witness->exact) << " log " << c.place->p << "\n";
      else
        s << "witness: G in " << interval_text(c.witness->approx) << "\n";
      break;
    case Verdict::Unknown:
      s << "iterates examined: " << c.step << "\n";
      break;
    }
    emit(o, s.str());
  }
  return c.verdict == Verdict::Unknown ? kUnknown : kOk;
}

int cmd_heights(const Options &o) {
  if (o.max_steps < 1)
    throw ParseError("heights needs --max-steps >= 1");
  const PolyMap f = load_map(o);
  const HeightReport r = height_report(f, o.max_steps - 1, static_cast<mpfr_prec_t>(o.precision));
  if (o.format == "json") {
    emit(o, dump(to_json(r)));
    return kOk;
  }
  std::ostringstream s;
  for (const auto &p : r.places) {
    s << "place " << p.place.to_string() << ": B = ";
    if (p.place.is_arch())
      s << interval_text(p.B.approx);
    else
      s << to_string(p.B.exact) << " log " << p.place.p;
    s << ", G(C_f) " << to_string(p.lambda_crit.kind) << " ";
    if (p.place.is_arch() || p.lambda_crit.kind == GreenKind::Bounded)
      s << interval_text(p.lambda_crit.value);
    else
      s << (p.lambda_crit.kind == GreenKind::Unresolved ? "<= " : "= ") << to_string(p.lambda_crit.exact) << " log "
        << p.place.p;
    s << " (step " << p.lambda_crit.step << ")\n";
  }
  s << "h_Weil in " << interval_text(r.weil) << "\nh_crit in " << interval_text(r.crit) << "\n";
  emit(o, s.str());
  return kOk;
}

int cmd_search(const Options &o) {
  if (o.box < 0)
    throw ParseError("search needs --box >= 0");
  SearchConfig cfg{o.box, budgets(o), o.threads, o.checkpoint, o.chunk_size, o.stop_after_chunks};
  const SearchResult r = search_box(cfg);
  if (o.format == "json") {
    emit(o, dump(to_json(r)));
  } else if (o.format == "text") {
    std::ostringstream s;
    s << "box " << r.box << ": " << r.examined << " of " << r.total << " tuples examined\n";
    for (const auto &[place, n] : r.not_pcf)
      s << "NOT_PCF_PROVEN at " << place << ": " << n << "\n";
    s << "PCF_PROVEN: " << r.survivors.size() - r.unknown() << "\nUNKNOWN: " << r.unknown() << "\n";
    s << "classes: " << r.classes.size() << "\n";
    for (const auto &c : r.classes)
      s << "  (" << to_string(c.representative) << ") with " << c.members.size() << " tuples\n";
    emit(o, s.str());
  } else {
    emit(o, to_csv(r));
  }
  return r.unknown() > 0 ? kUnknown : kOk;
}

int cmd_dedupe(const Options &o) {
  std::vector<Quad> tuples;
  for (const auto &t : o.tuples)
    tuples.push_back(integer_quad(t));
  if (!o.in_file.empty()) {
    std::ifstream in(o.in_file);
    if (!in)
      throw ParseError("cannot read " + o.in_file);
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line.rfind("tuple", 0) == 0)
        continue;
      // Plain "a,b,c,d" lines, or search CSV rows whose first field is the tuple.
      const auto q = line.find('"');
      const std::string first = q == std::string::npos ? line : line.substr(0, line.find('"', q + 1));
      auto parts = split(first, ',');
      if (parts.size() < 4)
        throw ParseError("bad tuple line: " + line);
      parts.resize(4);
      tuples.push_back(integer_quad(parts[0] + "," + parts[1] + "," + parts[2] + "," + parts[3]));
    }
  }
  const auto classes = conjugacy_dedupe(tuples);
  if (o.format == "json") {
    emit(o, dump(to_json(classes)));
  } else {
    std::ostringstream s;
    for (const auto &c : classes) {
      s << "(" << to_string(c.representative) << "):";
      for (const auto &m : c.members)
        s << " (" << to_string(m) << ")";
      if (c.irrational_fixed_points_only)
        s << " [no rational fixed point besides the origin]";
      s << "\n";
    }
    emit(o, s.str());
  }
  return kOk;
}

int cmd_bound(const Options &o) {
  const SearchBound b = derive_search_bound(o.N, o.d, static_cast<mpfr_prec_t>(o.precision));
  const Integer count = tuple_count(b.bound);
  if (o.format == "json") {
    emit(o, dump({{"bound", b.bound},
                  {"log_bound_candidates", {to_json(b.first), to_json(b.second)}},
                  {"tuple_count", count.get_str()}}));
  } else {
    emit(o, "bound: " + std::to_string(b.bound) + "\nlog candidates: " + interval_text(b.first) + ", " +
                interval_text(b.second) + "\ntuples with a, d even: " + count.get_str() + "\n");
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Critical orbits of monic polynomial endomorphisms of projective space"};
  app.require_subcommand(1);
  Options o;

  auto add_map = [&](CLI::App *c) {
    c->add_option("--map", o.map_file, "map JSON file");
    c->add_option("--quad", o.quad, "quadratic family parameters a,b,c,d");
  };
  auto add_format = [&](CLI::App *c, const std::string &def) {
    o.format = def;
    c->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--out", o.out, "write output to this file");
  };
  auto add_budget = [&](CLI::App *c) {
    c->add_option("--max-steps", o.max_steps, "critical-orbit iterates examined")->check(CLI::NonNegativeNumber);
    c->add_option("--precision", o.precision, "interval precision in bits")->check(CLI::Range(16L, 1L << 20));
  };

  auto *jac = app.add_subcommand("jacobian", "Jacobian form and critical divisor");
  add_map(jac);
  auto *push = app.add_subcommand("pushforward", "pushforward of a divisor (default C_f)");
  add_map(push);
  push->add_option("--divisor", o.divisor_file, "divisor JSON file");
  auto *orb = app.add_subcommand("orbit", "radicals of the forward orbit of a divisor");
  add_map(orb);
  orb->add_option("--divisor", o.divisor_file, "divisor JSON file");
  orb->add_option("--max-steps", o.max_steps, "iterates examined")->check(CLI::NonNegativeNumber);
  auto *cls = app.add_subcommand("classify", "PCF / not-PCF certificate");
  add_map(cls);
  add_budget(cls);
  auto *hts = app.add_subcommand("heights", "local and global heights");
  add_map(hts);
  add_budget(hts);
  auto *srch = app.add_subcommand("search", "exhaustive search of the quadratic family");
  srch->add_option("--box", o.box, "bound on |a|, |b|, |c|, |d|")->required();
  add_budget(srch);
  srch->add_option("--threads", o.threads, "OpenMP threads (0: default)")->check(CLI::NonNegativeNumber);
  srch->add_option("--checkpoint", o.checkpoint, "line-delimited JSON checkpoint, resumed if present");
  srch->add_option("--chunk-size", o.chunk_size, "tuples per checkpointed chunk")->check(CLI::PositiveNumber);
  srch->add_option("--stop-after-chunks", o.stop_after_chunks, "stop early after this many chunks");
  auto *dd = app.add_subcommand("dedupe", "conjugacy classes of quadratic tuples");
  dd->add_option("--tuple", o.tuples, "a,b,c,d (repeatable; use --tuple=-2,0,0,0 for negatives)");
  dd->add_option("--in", o.in_file, "file of tuples, one per line, or a search CSV");
  auto *bnd = app.add_subcommand("bound", "coefficient bound for PCF quadratic maps");
  bnd->add_option("--N", o.N, "dimension");
  bnd->add_option("--d", o.d, "degree");
  bnd->add_option("--precision", o.precision, "interval precision in bits")->check(CLI::Range(16L, 1L << 20));

  for (auto *c : {jac, push, orb, cls, hts, dd, bnd})
    add_format(c, "text");
  add_format(srch, "csv");
  o.format.clear();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  if (o.format.empty())
    o.format = srch->parsed() ? "csv" : "text";

  try {
    if (jac->parsed())
      return cmd_jacobian(o);
    if (push->parsed())
      return cmd_pushforward(o);
    if (orb->parsed())
      return cmd_orbit(o);
    if (cls->parsed())
      return cmd_classify(o);
    if (hts->parsed())
      return cmd_heights(o);
    if (srch->parsed())
      return cmd_search(o);
    if (dd->parsed())
      return cmd_dedupe(o);
    if (bnd->parsed())
      return cmd_bound(o);
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const NotInDivStar &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const UnsupportedFamily &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const CheckpointError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kDefect;
  }
  return kDefect;
}
