#include "isopar/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "isopar/poly_io.hpp"
#include "isopar/torsion.hpp"

namespace isopar::campaign {

using nlohmann::ordered_json;

namespace {

// ---- field dispatch and serialization

template <class Fn>
auto with_field(const CampaignConfig& c, Fn&& fn) {
  if (c.field == FieldKind::rational) return fn(RationalField{});
  return fn(PrimeField(c.prime));
}

ordered_json element_json(const Fp& a) { return a.value(); }
ordered_json element_json(const Rational& a) { return to_string(a); }

template <Field K>
ordered_json matrix_json(const Matrix<K>& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Field K>
ordered_json layers_json(const BkMatrix<K>& m) {
  ordered_json out = ordered_json::array();
  for (const auto& l : m.layers()) out.push_back(matrix_json(l));
  return out;
}

template <Field K>
std::string poly_string(const PolyElement<K>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
    if (p.coeff(j).is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(p.coeff(j)) + ")";
    if (j == 1) out += "s";
    if (j > 1) out += "s^" + std::to_string(j);
  }
  return out;
}

template <Field K>
ordered_json poly_matrix_json(const PolyMatrix<K>& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(poly_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Field K>
std::string square_zero_string(const SquareZeroPlaneElement<K>& e) {
  std::string out;
  auto add = [&](const typename K::Element& c, const char* name) {
    if (c.is_zero()) return;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")" + name;
  };
  add(e.a, "");
  add(e.b, "x");
  add(e.c, "y");
  return out.empty() ? "0" : out;
}

template <Field K>
ordered_json square_zero_json(const SquareZeroMatrix<K>& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.n; ++j) row.push_back(square_zero_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json profile_json(const TorsionProfile& p) {
  return ordered_json{{"free_rank", p.free_rank}, {"exponents", p.exponents}, {"m", m_profile(p)}};
}

std::string field_name(const CampaignConfig& c) {
  return c.field == FieldKind::rational ? "Q" : "F_" + std::to_string(c.prime);
}

ordered_json config_json(const std::string& command, const CampaignConfig& c) {
  ordered_json j;
  j["field"] = field_name(c);
  const std::size_t k_max = c.k_max.value_or(default_k_max(command));
  if (command == "skew") {
    j["q_range"] = {c.q_range.lo, c.q_range.hi};
    j["k_max"] = k_max;
  } else if (command == "isotropic" || command == "torsion") {
    if (command == "torsion" && c.input) {
      j["input"] = *c.input;
      if (c.precision_cap) j["precision_cap"] = *c.precision_cap;
      return j;
    }
    j["r_range"] = {c.r_range.lo, c.r_range.hi};
    j["k_max"] = k_max;
    j["mode"] = to_string(c.mode);
  } else if (command == "base-change") {
    j["r_range"] = {c.r_range.lo, c.r_range.hi};
    j["max_degree"] = c.max_degree;
    j["k_max"] = k_max;
  } else if (command == "counterexample") {
    j["variant"] = c.variant == CounterexampleVariant::fixed ? "fixed"
                   : c.variant == CounterexampleVariant::zero ? "zero"
                                                              : "random";
    if (c.variant == CounterexampleVariant::random) j["q_range"] = {c.q_range.lo, c.q_range.hi};
    if (c.variant != CounterexampleVariant::random) return j;
  }
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  return j;
}

std::size_t draw(Rng& rng, const SizeRange& range) {
  return static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(range.lo), static_cast<std::int64_t>(range.hi)));
}

// ---- trial pool

/// Fills `data` and returns whether every property held. Library errors mark
/// the trial failed and are recorded alongside whatever parameters were set.
template <class Fn>
TrialRecord run_one(std::size_t t, std::uint64_t seed, Fn& fn) {
  TrialRecord rec{t, seed, true, ordered_json::object()};
  rec.data["trial"] = t;
  rec.data["seed"] = seed;
  try {
    rec.passed = fn(seed, rec.data);
  } catch (const Error& e) {
    rec.passed = false;
    rec.data["error"] = e.what();
  }
  rec.data["passed"] = rec.passed;
  return rec;
}

template <class Fn>
std::vector<TrialRecord> run_trials(const CampaignConfig& c, std::size_t count, Fn fn) {
  std::vector<TrialRecord> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < count;) out[t] = run_one(t, derive_seed(c.seed, t), fn);
  };
  unsigned jobs = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  return out;
}

template <class Fn>
Report timed(const std::string& command, const CampaignConfig& c, Fn body) {
  validate(command, c);
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.command = command;
  rep.config = config_json(command, c);
  rep.summary = ordered_json::object();
  body(rep);
  ordered_json summary{{"trials", rep.trials.size()},
                       {"passed", rep.trials.size() - rep.failures()},
                       {"failed", rep.failures()}};
  summary.update(rep.summary);
  rep.summary = std::move(summary);
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::size_t count_true(const std::vector<TrialRecord>& trials, const char* key) {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [key](const TrialRecord& r) {
    return r.data.contains(key) && r.data[key].is_boolean() && r.data[key].get<bool>();
  }));
}

/// Shared by the isotropic and torsion campaigns so both see the same instances.
template <Field K>
IsotropicInstance<K> draw_isotropic(const K& field, const CampaignConfig& c, std::uint64_t seed, ordered_json& data) {
  Rng rng(seed);
  const std::size_t r = draw(rng, c.r_range);
  data["r"] = r;
  return random_isotropic_pair(field, r, c.k_max.value_or(default_k_max("isotropic")), rng.next(), c.mode);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---- configuration

SizeRange parse_range(const std::string& text) {
  auto parse_one = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw UsageError("bad range '" + text + "' (expected LO:HI or N)");
    return static_cast<std::size_t>(std::stoull(s));
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const auto v = parse_one(text);
    return {v, v};
  }
  return {parse_one(text.substr(0, colon)), parse_one(text.substr(colon + 1))};
}

std::size_t default_k_max(const std::string& command) { return command == "base-change" ? 5 : 6; }

void validate(const std::string& command, const CampaignConfig& c) {
  if (c.field == FieldKind::prime) PrimeField check(c.prime);
  auto check_range = [](const SizeRange& r, const char* name) {
    if (r.lo == 0) throw UsageError(std::string(name) + " range must start at 1 or more");
    if (r.lo > r.hi) throw UsageError(std::string(name) + " range is empty");
    if (r.hi > 64) throw UsageError(std::string(name) + " range exceeds 64");
  };
  if (c.trials == 0) throw UsageError("trials must be at least 1");
  if (c.k_max && *c.k_max == 0) throw UsageError("k-max must be at least 1");
  if (c.k_max && *c.k_max > 64) throw UsageError("k-max exceeds 64");
  if (c.precision_cap && *c.precision_cap == 0) throw UsageError("precision cap must be at least 1");
  if (command == "skew") {
    check_range(c.q_range, "q");
  } else if (command == "isotropic" || command == "torsion") {
    if (!(command == "torsion" && c.input)) check_range(c.r_range, "r");
  } else if (command == "base-change") {
    check_range(c.r_range, "r");
  } else if (command == "counterexample") {
    if (c.variant == CounterexampleVariant::random) check_range(c.q_range, "q");
  } else {
    throw UsageError("unknown command '" + command + "'");
  }
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const TrialRecord& r) { return !r.passed; }));
}

// ---- campaigns

Report run_skew(const CampaignConfig& c) {
  return timed("skew", c, [&](Report& rep) {
    const std::size_t k_max = c.k_max.value_or(default_k_max("skew"));
    rep.trials = with_field(c, [&](auto field) {
      return run_trials(c, c.trials, [&](std::uint64_t seed, ordered_json& data) {
        Rng rng(seed);
        const std::size_t q = draw(rng, c.q_range);
        const auto depth = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(k_max)));
        data["q"] = q;
        data["depth"] = depth;
        const auto family = random_skew_family(field, q, depth, rng);
        bool passed = true;
        try {
          const auto r = check_lemma21(family, k_max);
          data["r"] = r.r;
          data["even_ok"] = r.even_ok;
          data["monotone_ok"] = r.monotone_ok;
          data["nesting_ok"] = r.nesting_ok;
          data["paths_agree"] = true;
          passed = r.even_ok && r.monotone_ok && r.nesting_ok;
        } catch (const InconsistencyError& e) {
          data["paths_agree"] = false;
          data["error"] = e.what();
          passed = false;
        }
        if (!passed) data["layers"] = layers_json(family.truncated(depth));
        return passed;
      });
    });
  });
}

Report run_isotropic(const CampaignConfig& c) {
  return timed("isotropic", c, [&](Report& rep) {
    const std::size_t k_max = c.k_max.value_or(default_k_max("isotropic"));
    rep.trials = with_field(c, [&](auto field) {
      return run_trials(c, c.trials, [&](std::uint64_t seed, ordered_json& data) {
        const auto inst = draw_isotropic(field, c, seed, data);
        data["planted_q"] = inst.planted_q;
        const auto mu = align_and_extract_mu(inst.space, inst.w1, inst.w2);
        bool passed = true;
        try {
          const auto p = check_theorem(inst.space, inst.w1, inst.w2, k_max, &mu);
          data["q"] = p.q;
          data["d"] = p.d;
          data["even_ok"] = p.even_ok;
          data["monotone_ok"] = p.monotone_ok;
          data["paths_agree"] = true;
          data["hyperbolic_ok"] = p.hyperbolic_ok;
          data["mu_skew_ok"] = p.mu_skew_ok;
          data["transversal_ok"] = p.transversal_ok;
          passed = p.even_ok && p.monotone_ok && p.hyperbolic_ok && p.mu_skew_ok && p.transversal_ok;
          if (inst.planted_mu) {
            bool planted_ok = mu.q == inst.planted_q;
            for (std::size_t k = 1; k <= k_max; ++k)
              planted_ok = planted_ok && planted_intersection_dim(inst, k) == p.q[k - 1];
            data["planted_ok"] = planted_ok;
            passed = passed && planted_ok;
          }
        } catch (const InconsistencyError& e) {
          data["paths_agree"] = false;
          data["error"] = e.what();
          passed = false;
        }
        // empirical parities, recorded and never asserted
        const auto profile = snf_exponents(model_complex(inst.space, inst.w1, inst.w2).d);
        data["generic_rank"] = profile.free_rank;
        data["m1"] = profile.exponents.size();
        data["m1_even"] = profile.exponents.size() % 2 == 0;
        data["q1_generic_parity"] = (mu.q + profile.free_rank) % 2 == 0;
        if (!passed) {
          data["gram"] = layers_json(inst.space.gram());
          data["w1"] = layers_json(inst.w1.basis());
          data["w2"] = layers_json(inst.w2.basis());
        }
        return passed;
      });
    });
    rep.summary["m1_even"] = count_true(rep.trials, "m1_even");
    rep.summary["q1_generic_parity"] = count_true(rep.trials, "q1_generic_parity");
    rep.summary["planted_checked"] = static_cast<std::size_t>(std::count_if(
        rep.trials.begin(), rep.trials.end(), [](const TrialRecord& r) { return r.data.contains("planted_ok"); }));
  });
}

Report run_torsion(const CampaignConfig& c) {
  if (c.input) {
    validate("torsion", c);
    const auto parsed = parse_int_poly_matrix(read_file(*c.input));
    return timed("torsion", c, [&](Report& rep) {
      rep.trials = with_field(c, [&](auto field) {
        const auto d = to_poly_matrix(field, parsed);
        CampaignConfig single = c;
        single.jobs = 1;
        return run_trials(single, 1, [&](std::uint64_t seed, ordered_json& data) {
          data["rows"] = d.rows();
          data["cols"] = d.cols();
          data["matrix"] = poly_matrix_json(d);
          const auto profile = snf_exponents(d, c.precision_cap);
          data["profile"] = profile_json(profile);
          data["split"] = split_check(profile);
          const auto dd = determinantal_divisor_valuations(d, seed);
          data["determinantal_valuations"] = dd.valuations;
          data["determinantal_exhaustive"] = dd.exhaustive;
          const bool dd_ok = profile_matches_determinantal(profile, d.rows(), dd.valuations);
          data["determinantal_ok"] = dd_ok;
          return dd_ok;
        });
      });
    });
  }
  return timed("torsion", c, [&](Report& rep) {
    const std::size_t k_max = c.k_max.value_or(default_k_max("torsion"));
    rep.trials = with_field(c, [&](auto field) {
      return run_trials(c, c.trials, [&](std::uint64_t seed, ordered_json& data) {
        const auto inst = draw_isotropic(field, c, seed, data);
        const auto cx = model_complex(inst.space, inst.w1, inst.w2);
        const auto profile = snf_exponents(cx.d);
        data["profile"] = profile_json(profile);
        const bool split = split_check(profile);
        data["split"] = split;
        const auto dd = determinantal_divisor_valuations(cx.d, derive_seed(seed, 1));
        const bool dd_ok = profile_matches_determinantal(profile, cx.d.rows(), dd.valuations);
        data["determinantal_ok"] = dd_ok;
        data["determinantal_exhaustive"] = dd.exhaustive;
        bool model_ok = true;
        std::vector<std::size_t> h0;
        for (std::size_t k = 1; k <= k_max; ++k) {
          const auto dims = cohomology_dims(cx, k);
          h0.push_back(dims.h0);
          model_ok = model_ok && dims.h0 == dims.h1 &&
                     dims.h0 == intersection_dim_oracle(inst.space, inst.w1, inst.w2, k) &&
                     dims.h1 == tensor_dim(profile, k);
        }
        data["h0"] = h0;
        data["model_ok"] = model_ok;
        const bool passed = split && dd_ok && model_ok;
        if (!passed) data["matrix"] = poly_matrix_json(cx.d);
        return passed;
      });
    });
    rep.summary["split"] = count_true(rep.trials, "split");
    rep.summary["determinantal_exhaustive"] = count_true(rep.trials, "determinantal_exhaustive");
  });
}

Report run_base_change(const CampaignConfig& c) {
  return timed("base-change", c, [&](Report& rep) {
    const std::size_t k_max = c.k_max.value_or(default_k_max("base-change"));
    rep.trials = with_field(c, [&](auto field) {
      return run_trials(c, c.trials, [&](std::uint64_t seed, ordered_json& data) {
        Rng rng(seed);
        const auto cx = random_two_term_complex(field, c.r_range.lo, c.r_range.hi, c.max_degree, rng);
        data["rank0"] = cx.rank0;
        data["rank1"] = cx.rank1;
        const auto b = check_base_change(cx, k_max, c.precision_cap);
        data["h1_profile"] = profile_json(b.h1_profile);
        data["generic_rank"] = b.generic_rank;
        data["h0"] = b.h0;
        data["h1"] = b.h1;
        data["predicted_h1"] = b.predicted_h1;
        data["h1_ok"] = b.h1_ok;
        data["h1_vanishes"] = b.h1_vanishes;
        data["h0_ok"] = b.h0_ok;
        data["h0_discrepancy"] = b.h0_discrepancy;
        const bool passed = b.h1_ok && b.h0_ok;
        if (!passed) data["matrix"] = poly_matrix_json(cx.d);
        return passed;
      });
    });
    rep.summary["h1_vanishes"] = count_true(rep.trials, "h1_vanishes");
    rep.summary["h0_discrepancy_nonzero"] = static_cast<std::size_t>(
        std::count_if(rep.trials.begin(), rep.trials.end(), [](const TrialRecord& r) {
          if (!r.data.contains("h0_discrepancy")) return false;
          const auto& v = r.data["h0_discrepancy"];
          return std::any_of(v.begin(), v.end(), [](const ordered_json& x) { return x.get<long>() != 0; });
        }));
  });
}

Report run_counterexample(const CampaignConfig& c) {
  return timed("counterexample", c, [&](Report& rep) {
    const bool random = c.variant == CounterexampleVariant::random;
    rep.trials = with_field(c, [&](auto field) {
      using K = decltype(field);
      return run_trials(c, random ? c.trials : 1, [&](std::uint64_t seed, ordered_json& data) {
        Rng rng(seed);
        SquareZeroMatrix<K> m;
        std::size_t expected = 0;
        switch (c.variant) {
          case CounterexampleVariant::fixed:
            m = counterexample_matrix(field);
            expected = 3;
            break;
          case CounterexampleVariant::zero:
            m = SquareZeroMatrix<K>{3, std::vector(9, SquareZeroPlaneElement<K>::zero(field))};
            break;
          case CounterexampleVariant::random:
            m = random_square_zero_skew(field, draw(rng, c.q_range), rng);
            break;
        }
        data["ring"] = "K[x,y]/(x,y)^2";
        data["matrix"] = square_zero_json(m);
        const std::size_t dim = square_zero_image_dim(field, m);
        data["image_dim"] = dim;
        data["parity"] = dim % 2 == 0 ? "EVEN" : "ODD";
        // the same size over B_k: ranks stay even
        const auto family = random_skew_family(field, 3, 3, rng);
        const auto contrast = check_lemma21(family, 3);
        data["contrast"] = ordered_json{{"ring", "K[s]/(s^k)"}, {"q", 3}, {"r", contrast.r}, {"even", contrast.even_ok}};
        if (!contrast.even_ok) return false;
        return random || dim == expected;
      });
    });
    // parity over the square-zero ring is recorded, never asserted
    rep.summary["odd"] = static_cast<std::size_t>(std::count_if(rep.trials.begin(), rep.trials.end(), [](const TrialRecord& r) {
      return r.data.contains("parity") && r.data["parity"] == "ODD";
    }));
  });
}

Report run_command(const std::string& command, const CampaignConfig& c) {
  if (command == "skew") return run_skew(c);
  if (command == "isotropic") return run_isotropic(c);
  if (command == "torsion") return run_torsion(c);
  if (command == "base-change") return run_base_change(c);
  if (command == "counterexample") return run_counterexample(c);
  throw UsageError("unknown command '" + command + "'");
}

// ---- output

namespace {

std::string csv_cell(const ordered_json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const ordered_json& x) { return x.is_primitive(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

std::string render(const Report& rep, OutputFormat format, bool include_timing) {
  if (format == OutputFormat::json) {
    ordered_json j;
    j["command"] = rep.command;
    j["config"] = rep.config;
    j["trials"] = ordered_json::array();
    for (const auto& t : rep.trials) j["trials"].push_back(t.data);
    j["summary"] = rep.summary;
    if (include_timing) j["summary"]["wall_time_ms"] = rep.wall_time_ms;
    return j.dump(2) + "\n";
  }
  std::vector<std::string> columns;
  for (const auto& t : rep.trials)
    for (const auto& [key, value] : t.data.items())
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& t : rep.trials) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      if (t.data.contains(columns[i])) out += csv_cell(t.data[columns[i]]);
    }
    out += "\n";
  }
  out += "# command," + rep.command + "\n";
  for (const auto& [key, value] : rep.config.items()) out += "# config." + key + "," + csv_cell(value) + "\n";
  for (const auto& [key, value] : rep.summary.items()) out += "# summary." + key + "," + csv_cell(value) + "\n";
  if (include_timing) out += "# summary.wall_time_ms," + std::to_string(rep.wall_time_ms) + "\n";
  return out;
}

int exit_code(const Report& rep) { return rep.failures() == 0 ? 0 : 1; }

}  // namespace isopar::campaign
