#include "monicdyn/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace monicdyn {

using nlohmann::json;

namespace {

struct Axes {
  long even;
  std::uint64_t ne, nb;
};

Axes axes(long box) {
  if (box < 0)
    throw std::invalid_argument("search: box must be non-negative");
  const long even = 2 * (box / 2);
  return {even, static_cast<std::uint64_t>(even + 1), static_cast<std::uint64_t>(2 * box + 1)};
}

} // namespace

std::uint64_t box_size(long box) {
  const Axes x = axes(box);
  return x.ne * x.ne * x.nb * x.nb;
}

Quad tuple_at(long box, std::uint64_t index) {
  const Axes x = axes(box);
  const long d = static_cast<long>(index % x.ne);
  index /= x.ne;
  const long c = static_cast<long>(index % x.nb);
  index /= x.nb;
  const long b = static_cast<long>(index % x.nb);
  index /= x.nb;
  const long a = static_cast<long>(index);
  return {2 * a - x.even, b - box, c - box, 2 * d - x.even};
}

std::uint64_t index_of(long box, const Quad &t) {
  const Axes x = axes(box);
  auto even_pos = [&](long v) {
    if (v % 2 != 0 || v < -x.even || v > x.even)
      throw std::out_of_range("index_of: a and d must be even and inside the box");
    return static_cast<std::uint64_t>((v + x.even) / 2);
  };
  auto pos = [&](long v) {
    if (v < -box || v > box)
      throw std::out_of_range("index_of: tuple outside the box");
    return static_cast<std::uint64_t>(v + box);
  };
  return ((even_pos(t[0]) * x.nb + pos(t[1])) * x.nb + pos(t[2])) * x.ne + even_pos(t[3]);
}

TupleResult classify_tuple(const Quad &t, const Budgets &budgets) {
  const Certificate c = classify(PolyMap::quadratic(t[0], t[1], t[2], t[3]), budgets);
  TupleResult r{t, c.verdict, c.step, {}};
  if (c.verdict == Verdict::PcfProven)
    r.witness_place = "orbit";
  else if (c.place)
    r.witness_place = c.place->to_string();
  return r;
}

std::uint64_t SearchResult::unknown() const {
  return static_cast<std::uint64_t>(std::count_if(survivors.begin(), survivors.end(),
                                                  [](const TupleResult &r) { return r.verdict == Verdict::Unknown; }));
}

std::optional<Quad> SearchResult::representative_of(const Quad &t) const {
  for (const auto &cls : classes)
    if (std::binary_search(cls.members.begin(), cls.members.end(), t))
      return cls.representative;
  return std::nullopt;
}

namespace {

void absorb(SearchResult &res, const TupleResult &r) {
  ++res.examined;
  if (r.verdict == Verdict::NotPcfProven)
    ++res.not_pcf[r.witness_place];
  else
    res.survivors.push_back(r);
}

void finish(SearchResult &res) {
  std::vector<Quad> pcf;
  for (const auto &r : res.survivors)
    if (r.verdict == Verdict::PcfProven)
      pcf.push_back(r.tuple);
  res.classes = conjugacy_dedupe(pcf);
}

Verdict parse_verdict(const std::string &s) {
  if (s == "PCF_PROVEN")
    return Verdict::PcfProven;
  if (s == "NOT_PCF_PROVEN")
    return Verdict::NotPcfProven;
  if (s == "UNKNOWN")
    return Verdict::Unknown;
  throw CheckpointError("checkpoint: unknown verdict " + s);
}

json config_record(const SearchConfig &cfg) {
  return {{"config",
           {{"box", cfg.box},
            {"max_steps", cfg.budgets.max_steps},
            {"precision", cfg.budgets.precision},
            {"chunk_size", cfg.chunk_size}}}};
}

json survivor_record(const TupleResult &r) {
  json witness = {{"place", r.witness_place.empty() ? json() : json(r.witness_place)}, {"step", r.step}};
  return {{"survivor", r.tuple}, {"verdict", to_string(r.verdict)}, {"witness", witness}};
}

json cursor_record(const Quad &t, const SearchResult &res) {
  return {{"cursor", t}, {"examined", res.examined}, {"not_pcf", res.not_pcf}};
}

// Restores the state at the last cursor and truncates anything after it.
// Returns the index of the next tuple to examine.
std::uint64_t load_checkpoint(const SearchConfig &cfg, SearchResult &res) {
  std::ifstream in(cfg.checkpoint);
  if (!in)
    throw CheckpointError("checkpoint: cannot read " + cfg.checkpoint);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty())
      lines.push_back(line);
  if (lines.empty())
    return 0;

  const json expected = config_record(cfg);
  std::vector<TupleResult> pending;
  std::size_t kept = 1;
  std::uint64_t next = 0;
  try {
    if (json::parse(lines[0]) != expected)
      throw CheckpointError("checkpoint: " + cfg.checkpoint + " was written with a different configuration");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const json rec = json::parse(lines[i]);
      if (rec.contains("survivor")) {
        TupleResult r;
        r.tuple = rec.at("survivor").get<Quad>();
        r.verdict = parse_verdict(rec.at("verdict").get<std::string>());
        const json &w = rec.at("witness");
        r.witness_place = w.at("place").is_null() ? "" : w.at("place").get<std::string>();
        r.step = w.at("step").get<int>();
        pending.push_back(r);
      } else if (rec.contains("cursor")) {
        res.survivors.insert(res.survivors.end(), pending.begin(), pending.end());
        pending.clear();
        res.examined = rec.at("examined").get<std::uint64_t>();
        res.not_pcf = rec.at("not_pcf").get<std::map<std::string, std::uint64_t>>();
        next = index_of(cfg.box, rec.at("cursor").get<Quad>()) + 1;
        kept = i + 1;
      } else {
        throw CheckpointError("checkpoint: unrecognized record at line " + std::to_string(i + 1));
      }
    }
  } catch (const json::exception &e) {
    throw CheckpointError("checkpoint: malformed " + cfg.checkpoint + ": " + e.what());
  } catch (const std::out_of_range &e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
  if (res.examined != next)
    throw CheckpointError("checkpoint: cursor and examined count disagree");
  if (kept < lines.size()) {
    std::ofstream out(cfg.checkpoint, std::ios::trunc);
    for (std::size_t i = 0; i < kept; ++i)
      out << lines[i] << '\n';
    if (!out)
      throw CheckpointError("checkpoint: cannot rewrite " + cfg.checkpoint);
  }
  return next;
}

} // namespace

SearchResult search_box(const SearchConfig &cfg) {
  SearchResult res;
  res.box = cfg.box;
  res.total = box_size(cfg.box);
  if (cfg.chunk_size == 0)
    throw std::invalid_argument("search: chunk size must be positive");

  std::uint64_t next = 0;
  std::ofstream log;
  if (!cfg.checkpoint.empty()) {
    const bool exists = std::filesystem::exists(cfg.checkpoint) && std::filesystem::file_size(cfg.checkpoint) > 0;
    if (exists)
      next = load_checkpoint(cfg, res);
    log.open(cfg.checkpoint, std::ios::app);
    if (!log)
      throw CheckpointError("checkpoint: cannot write " + cfg.checkpoint);
    if (!exists)
      log << config_record(cfg).dump() << '\n' << std::flush;
  }

#ifdef _OPENMP
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#endif
  std::uint64_t chunks = 0;
  std::vector<TupleResult> results;
  while (next < res.total) {
    if (cfg.stop_after_chunks && chunks == *cfg.stop_after_chunks)
      return res;
    const std::uint64_t end = std::min(res.total, next + cfg.chunk_size);
    const auto len = static_cast<std::int64_t>(end - next);
    results.assign(static_cast<std::size_t>(len), {});
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < len; ++i) {
      try {
        results[static_cast<std::size_t>(i)] =
            classify_tuple(tuple_at(cfg.box, next + static_cast<std::uint64_t>(i)), cfg.budgets);
      } catch (...) {
#pragma omp critical
        if (!error)
          error = std::current_exception();
      }
    }
    if (error)
      std::rethrow_exception(error);

    for (const auto &r : results) {
      absorb(res, r);
      if (log.is_open() && r.verdict != Verdict::NotPcfProven)
        log << survivor_record(r).dump() << '\n';
    }
    if (log.is_open()) {
      log << cursor_record(results.back().tuple, res).dump() << '\n' << std::flush;
      if (!log)
        throw CheckpointError("checkpoint: write failed for " + cfg.checkpoint);
    }
    next = end;
    ++chunks;
  }
  res.complete = true;
  finish(res);
  return res;
}

SearchResult search_box_serial(const SearchConfig &cfg) {
  SearchResult res;
  res.box = cfg.box;
  res.total = box_size(cfg.box);
  for (std::uint64_t i = 0; i < res.total; ++i)
    absorb(res, classify_tuple(tuple_at(cfg.box, i), cfg.budgets));
  res.complete = true;
  finish(res);
  return res;
}

std::string to_csv(const SearchResult &r) {
  std::ostringstream out;
  out << "tuple,verdict,witness_place,witness_step,class_representative\n";
  for (const auto &s : r.survivors) {
    const auto rep = r.representative_of(s.tuple);
    out << '"' << to_string(s.tuple) << "\"," << to_string(s.verdict) << ',' << s.witness_place << ',' << s.step
        << ',';
    if (rep)
      out << '"' << to_string(*rep) << '"';
    out << '\n';
  }
  return out.str();
}

} // namespace monicdyn
