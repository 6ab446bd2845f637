#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cogrowth/csv.hpp"
#include "cogrowth/estimator.hpp"
#include "cogrowth/oracle.hpp"
#include "cogrowth/presentation.hpp"
#include "cogrowth/record_io.hpp"
#include "cogrowth/series.hpp"
#include "cogrowth/walker.hpp"
#include "manifest.hpp"

namespace cogrowth::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// helpers

/// Accepts plain integers and scientific forms such as "1e8".
std::uint64_t parse_count(const std::string& text, const std::string& what) {
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": expected a count, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v) || v < 0 || v != std::floor(v) || v >= 0x1p64) {
    throw UsageError(what + ": expected a non-negative integer count, got '" + text + "'");
  }
  if (v < 0x1p53) return static_cast<std::uint64_t>(v);
  // Beyond double precision only plain digits are exact.
  if (text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(what + ": write counts above 2^53 as plain digits");
  }
  return std::stoull(text);
}

/// "3", "2.5", "-1.25", "7/2" as an exact rational.
mpq_class parse_rational(const std::string& text, const std::string& what) {
  auto bad = [&] { return UsageError(what + ": expected a decimal or a/b rational, got '" + text + "'"); };
  if (text.empty()) throw bad();
  try {
    if (text.find('/') != std::string::npos) {
      mpq_class q(text);
      q.canonicalize();
      return q;
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return mpq_class(mpz_class(text));
    const std::string frac = text.substr(dot + 1);
    const std::string whole = text.substr(0, dot);
    if (frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::string digits = negative ? whole.substr(1) : whole;
    mpz_class num = mpz_class(digits.empty() ? "0" : digits) * scale + mpz_class(frac.empty() ? "0" : frac);
    mpq_class q(negative ? mpz_class(-num) : num, scale);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

fs::path prepare_output(const GlobalOptions& g, const std::string& name) {
  std::error_code ec;
  fs::create_directories(g.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + g.out_dir.string() + ": " + ec.message());
  return g.out_dir / name;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CsvTable parse_csv_checked(const std::string& text, const fs::path& path) {
  try {
    return parse_csv(text);
  } catch (const std::exception& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

WalkRecord load_record_checked(const fs::path& csv) {
  auto sidecar = csv;
  sidecar.replace_extension(".json");
  if (!fs::exists(csv)) throw IoError("no such file: " + csv.string());
  if (!fs::exists(sidecar)) throw IoError("missing sidecar " + sidecar.string());
  try {
    return load_record(csv);
  } catch (const std::exception& e) {
    throw UsageError(csv.string() + ": " + e.what());
  }
}

Presentation load_presentation(const std::string& preset, const std::string& file) {
  if (!preset.empty() && !file.empty()) throw UsageError("give either --preset or --presentation, not both");
  if (!file.empty()) return parse_presentation(read_file(file));
  if (!preset.empty()) return preset_from_id(preset);
  throw UsageError("a presentation is required (--preset or --presentation)");
}

double mean_length(const WalkRecord& rec) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t n = 0; n < rec.histogram.size(); ++n) {
    num += static_cast<double>(n) * static_cast<double>(rec.histogram[n]);
    den += static_cast<double>(rec.histogram[n]);
  }
  return den > 0 ? num / den : 0.0;
}

// Coefficient files: "n,value", with an optional "# format: exact|log" line.
struct Coefficients {
  bool log_space = false;
  std::vector<mpq_class> exact;
  std::vector<double> logs;
};

Coefficients read_coefficients(const fs::path& path) {
  const std::string text = read_file(path);
  Coefficients c;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("# format:", 0) == 0) {
      std::string fmt = line.substr(9);
      fmt.erase(0, fmt.find_first_not_of(' '));
      fmt.erase(fmt.find_last_not_of(" \r") + 1);
      if (fmt == "log") {
        c.log_space = true;
      } else if (fmt != "exact") {
        throw UsageError(path.string() + ": unknown coefficient format '" + fmt + "'");
      }
    }
  }
  const CsvTable table = parse_csv_checked(text, path);
  std::size_t col_n = 0;
  std::size_t col_v = 0;
  try {
    col_n = table.column("n");
    col_v = table.column("value");
  } catch (const std::exception& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (parse_count(row.at(col_n), path.string() + " column n") != r) {
      throw UsageError(path.string() + ": rows must list n = 0, 1, 2, ... in order");
    }
    const std::string& v = row.at(col_v);
    if (c.log_space) {
      try {
        c.logs.push_back(v == "-inf" ? -INFINITY : std::stod(v));
      } catch (const std::exception&) {
        throw UsageError(path.string() + ": bad log value '" + v + "'");
      }
    } else {
      c.exact.push_back(parse_rational(v, path.string() + " value"));
    }
  }
  if (c.exact.empty() && c.logs.empty()) throw UsageError(path.string() + ": no coefficients");
  return c;
}

std::string exact_string(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

// ---------------------------------------------------------------------------
// walk

struct WalkArgs {
  std::string preset;
  std::string presentation;
  std::vector<double> alphas{0.0};
  std::vector<double> betas{0.3};
  std::string steps = "1e6";
  std::uint32_t segments = 10;
  std::string stride = "1";
  std::string max_word_len = "1e6";
  std::uint32_t repeats = 1;
  double floor = 0.001;
  std::string out = "walk";
};

int cmd_walk(const GlobalOptions& g, const WalkArgs& a) {
  const Presentation pres = load_presentation(a.preset, a.presentation);
  std::vector<WalkParams> grid;
  for (double alpha : a.alphas) {
    for (double beta : a.betas) {
      for (std::uint32_t r = 0; r < a.repeats; ++r) {
        WalkParams p;
        p.alpha = alpha;
        p.beta = beta;
        p.steps = parse_count(a.steps, "--steps");
        p.segments = a.segments;
        p.seed = g.seed;
        p.stream = grid.size();
        p.stride = parse_count(a.stride, "--stride");
        p.max_word_length = parse_count(a.max_word_len, "--max-word-len");
        p.validate();
        grid.push_back(p);
      }
    }
  }

  RunManifest manifest("walk", g.argv);
  if (!a.presentation.empty()) manifest.add_input(a.presentation);
  const std::string text = render_presentation(pres);
  json grid_json = json::array();
  for (const auto& p : grid) {
    grid_json.push_back(params_to_json(p));
    manifest.add_seed(p.seed, p.stream);
  }
  manifest.set_parameters({{"presentation", text},
                           {"presentation_sha256", sha256_text(text)},
                           {"preset", a.preset},
                           {"grid", grid_json},
                           {"balance_floor", a.floor}});

  const std::vector<WalkRecord> records = run_grid(pres, grid, g.threads);

  bool diverged = false;
  bool wrong_group = false;
  std::uint64_t total_steps = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const WalkRecord& rec = records[i];
    const std::string base = records.size() == 1 ? a.out : a.out + "_" + std::to_string(i);
    const fs::path csv = prepare_output(g, base + ".csv");
    const fs::path side = prepare_output(g, base + ".json");
    std::ostringstream body;
    write_record_csv(rec, body);
    write_file(csv, body.str());
    write_file(side, record_sidecar(rec).dump(2) + "\n");
    manifest.add_output(csv);
    manifest.add_output(side);
    total_steps += rec.steps_done;

    std::cout << base << ": alpha=" << rec.params.alpha << " beta=" << rec.params.beta
              << " steps=" << rec.steps_done << " mean_length=" << mean_length(rec)
              << " max_length=" << rec.max_length_seen
              << " status=" << (rec.status == WalkStatus::completed ? "completed" : "diverged") << '\n';
    const RelatorBalance bal = diagnose_relator_balance(rec, a.floor);
    for (const auto& s : bal.shares) {
      std::cout << "  relator " << s.relator << " " << pres.alphabet().render(pres.user_relators()[s.relator].word)
                << ": accepted " << s.accepted << " share " << s.share << '\n';
    }
    if (bal.wrong_group_warning) {
      wrong_group = true;
      std::cerr << "warning: " << base << ": a relator's share of accepted insertions is below " << a.floor
                << "; the walk may be exploring a different group\n";
    }
    if (rec.status == WalkStatus::diverged) {
      diverged = true;
      std::cerr << "error: " << base << ": word length exceeded " << rec.params.max_word_length << " after "
                << rec.steps_done << " steps; beta is probably above the critical value\n";
    }
  }
  double wall = 0.0;
  for (const auto& r : records) wall += r.runtime_seconds;
  manifest.set_metric("total_steps", static_cast<double>(total_steps));
  manifest.set_metric("walk_seconds", wall);
  if (wall > 0) manifest.set_metric("steps_per_second", static_cast<double>(total_steps) / wall);
  manifest.write(prepare_output(g, a.out + ".manifest.json"));

  if (diverged) return kDiverged;
  if (wrong_group && g.strict) return kWrongGroup;
  return kOk;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  std::vector<std::string> records;
  std::size_t window = 100;
  double cutoff = 0.10;
  std::size_t max_len = 48;
  std::uint32_t burn_in = 1;
  std::string anchors_file;
  bool chain = false;
  std::string out = "estimate";
};

int cmd_estimate(const GlobalOptions& g, const EstimateArgs& a) {
  RunManifest manifest("estimate", g.argv);
  std::vector<WalkRecord> records;
  std::string digest;
  for (const auto& f : a.records) {
    records.push_back(load_record_checked(f));
    auto side = fs::path(f);
    side.replace_extension(".json");
    manifest.add_input(f);
    manifest.add_input(side);
    const std::string d = sha256_text(records.back().presentation);
    if (digest.empty()) digest = d;
    if (d != digest) {
      throw UsageError("walk records come from different presentations (" + a.records.front() + " vs " + f + ")");
    }
  }

  EstimatorOptions opt;
  opt.window = a.window;
  opt.cutoff = a.cutoff;
  opt.max_len = a.max_len;
  opt.burn_in_segments = a.burn_in;
  opt.chain = a.chain;
  if (!a.anchors_file.empty()) {
    manifest.add_input(a.anchors_file);
    const Coefficients anchors = read_coefficients(a.anchors_file);
    if (anchors.log_space) {
      for (std::size_t n = 0; n < anchors.logs.size(); ++n) opt.anchors[n] = std::exp(anchors.logs[n]);
    } else {
      for (std::size_t n = 0; n < anchors.exact.size(); ++n) opt.anchors[n] = anchors.exact[n].get_d();
    }
    // Zero entries are not usable anchors (their lengths are never visited).
    std::erase_if(opt.anchors, [](const auto& kv) { return !(kv.second > 0.0); });
  }
  for (const auto& r : records) {
    if (r.segment_histograms.size() < a.burn_in + 2u) {
      throw UsageError("--burn-in-segments leaves fewer than two segments");
    }
  }
  manifest.set_parameters({{"window", opt.window},
                           {"cutoff", opt.cutoff},
                           {"max_len", opt.max_len},
                           {"burn_in_segments", opt.burn_in_segments},
                           {"chain", opt.chain},
                           {"presentation_sha256", digest},
                           {"anchors", opt.anchors.size()}});

  const EstimateTable table = errr_estimate(records, opt);
  const auto gammas = gamma_series(table.estimates);

  std::ostringstream est;
  est << "n,log_c_n,c_n,rel_error,gamma_n,gamma_err,n_candidates\n";
  std::ostringstream gam;
  gam << "n,gamma_n,gamma_err,gamma_lower,gamma_upper\n";
  std::size_t gi = 0;
  for (const auto& e : table.estimates) {
    est << e.n << ',' << format_exact(e.log_value) << ',' << format_sci(e.value()) << ','
        << format_exact(e.rel_error) << ',';
    if (e.n > 0) {
      const GammaEstimate& ge = gammas.at(gi++);
      est << format_exact(ge.gamma) << ',' << format_exact(ge.gamma_error);
      gam << ge.n << ',' << format_exact(ge.gamma) << ',' << format_exact(ge.gamma_error) << ','
          << format_exact(ge.lower()) << ',' << format_exact(ge.upper()) << '\n';
    } else {
      est << ',';
    }
    est << ',' << e.candidates << '\n';
  }
  const fs::path est_path = prepare_output(g, a.out + "_estimates.csv");
  const fs::path gam_path = prepare_output(g, a.out + "_gamma.csv");
  write_file(est_path, est.str());
  write_file(gam_path, gam.str());
  manifest.add_output(est_path);
  manifest.add_output(gam_path);
  manifest.set_metric("last_completed", static_cast<double>(table.last_completed));
  manifest.write(prepare_output(g, a.out + ".manifest.json"));

  std::cout << "estimated " << table.estimates.size() << " coefficients up to n=" << table.last_completed
            << " from " << records.size() << " walk record(s)\n";
  if (!table.complete) {
    std::cerr << "coverage gap: last completed length " << table.last_completed;
    if (table.halted_at) std::cerr << ", no anchor within the window at n=" << *table.halted_at;
    std::cerr << " (requested --max-len " << a.max_len << ")\n";
    return kCoverageGap;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertArgs {
  std::string direction;
  unsigned p = 0;
  std::optional<std::size_t> order;
  std::string coeffs;
  std::string out = "converted";
};

int cmd_convert(const GlobalOptions& g, const ConvertArgs& a) {
  RunManifest manifest("convert", g.argv);
  manifest.add_input(a.coeffs);
  const Coefficients in = read_coefficients(a.coeffs);
  if (in.log_space) throw UsageError("convert needs exact coefficients, not log-space values");
  const std::size_t order = a.order.value_or(in.exact.size() - 1);
  if (order + 1 > in.exact.size()) {
    throw UsageError("--order " + std::to_string(order) + " needs coefficients up to n=" + std::to_string(order));
  }
  SeriesPoly s{Series(std::vector<mpq_class>(in.exact.begin(), in.exact.begin() + static_cast<long>(order) + 1)),
               a.p};
  const SeriesPoly out = a.direction == "d2c" ? reduced_from_cogrowth(s) : cogrowth_from_reduced(s);
  manifest.set_parameters({{"direction", a.direction}, {"p", a.p}, {"order", order}});

  std::ostringstream body;
  body << "# format: exact\n# series: " << (a.direction == "d2c" ? "reduced cogrowth c_n" : "cogrowth d_n")
       << ", p=" << a.p << "\nn,value\n";
  for (std::size_t n = 0; n <= out.series.order(); ++n) body << n << ',' << exact_string(out.series[n]) << '\n';
  const fs::path path = prepare_output(g, a.out + ".csv");
  write_file(path, body.str());
  manifest.add_output(path);
  manifest.write(prepare_output(g, a.out + ".manifest.json"));
  std::cout << "wrote " << out.series.order() + 1 << " coefficients to " << path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// rfun

struct RfunArgs {
  std::string coeffs;
  std::optional<double> model_q;
  std::optional<double> model_p;
  std::size_t model_len = 2000;
  std::string limit_root;
  std::size_t n_max = 50;
  std::string out = "rfun";
};

int cmd_rfun(const GlobalOptions& g, const RfunArgs& a) {
  RunManifest manifest("rfun", g.argv);
  const bool model = a.model_q || a.model_p;
  if (model == !a.coeffs.empty()) throw UsageError("give either --coeffs or --model-q/--model-p");
  if (model && !(a.model_q && a.model_p)) throw UsageError("--model-q and --model-p go together");
  const mpq_class root = parse_rational(a.limit_root, "--limit-root");
  if (root <= 0) throw UsageError("--limit-root must be positive");
  const mpq_class limit = root * root;

  RFunctionTable table;
  json params{{"limit_root", a.limit_root}, {"n_max", a.n_max}};
  if (model) {
    params["model_q"] = *a.model_q;
    params["model_p"] = *a.model_p;
    params["model_len"] = a.model_len;
    table = r_function_log(model_cogrowth(*a.model_q, *a.model_p, a.model_len), limit.get_d(), a.n_max);
  } else {
    manifest.add_input(a.coeffs);
    const Coefficients c = read_coefficients(a.coeffs);
    table = c.log_space ? r_function_log(c.logs, limit.get_d(), a.n_max) : r_function(c.exact, limit, a.n_max);
  }
  manifest.set_parameters(params);

  std::ostringstream body;
  for (const auto& note : table.notes) body << "# " << note << '\n';
  body << "n,R\n";
  for (std::size_t n = 1; n <= a.n_max; ++n) {
    const auto v = table.at(n);
    body << n << ',' << (v ? std::to_string(*v) : std::string("BEYOND-HORIZON")) << '\n';
  }
  const fs::path path = prepare_output(g, a.out + ".csv");
  write_file(path, body.str());
  manifest.add_output(path);
  manifest.write(prepare_output(g, a.out + ".manifest.json"));
  for (const auto& note : table.notes) std::cerr << "note: " << note << '\n';
  std::cout << "wrote R(n) for n=1.." << a.n_max << " to " << path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  std::string group;
  std::string kind = "c";
  std::size_t max_len = 12;
  std::string method = "enumerate";
  std::string out = "oracle";
};

int cmd_oracle(const GlobalOptions& g, const OracleArgs& a) {
  RunManifest manifest("oracle", g.argv);
  ExactTable table;
  if (a.group == "f-paper" || a.group == "thompson-f") {
    if (a.kind != "c") throw UsageError("only reduced-cogrowth (kind c) values are tabulated for F");
    table = published_f_table();
  } else {
    const WordProblemSolver solver = solver_from_id(a.group);
    if (a.kind == "d") {
      table = dp_return_counts(solver, a.max_len);
    } else if (a.method == "enumerate") {
      table = enumerate_reduced_cogrowth(solver, a.max_len);
    } else {
      const ExactTable d = dp_return_counts(solver, a.max_len);
      const SeriesPoly c = reduced_from_cogrowth({Series(d.dense()), solver_rank(solver)});
      table.kind = 'c';
      table.source = "dynamic programming + conversion";
      table.horizon = d.horizon;
      table.partial = d.partial;
      for (std::size_t n = 0; n <= c.series.order(); ++n) {
        if (c.series[n].get_den() != 1 || c.series[n] < 0) {
          throw std::runtime_error("conversion produced a non-integer or negative c_" + std::to_string(n));
        }
        table.values[n] = TableValue{c.series[n].get_num(), false, {}};
      }
    }
    table.group = a.group;
  }
  manifest.set_parameters({{"group", a.group}, {"kind", a.kind}, {"max_len", a.max_len}, {"method", a.method}});

  std::ostringstream body;
  body << "n,value,kind,group,source\n";
  for (const auto& [n, v] : table.values) {
    if (n > a.max_len) continue;
    body << n << ',' << (v.scientific ? v.printed : v.exact.get_str()) << ',' << table.kind << ',' << a.group << ','
         << table.source << '\n';
  }
  const fs::path path = prepare_output(g, a.out + ".csv");
  write_file(path, body.str());
  manifest.add_output(path);
  manifest.write(prepare_output(g, a.out + ".manifest.json"));
  if (table.partial) {
    std::cerr << "warning: table is complete only up to n=" << table.horizon << " (work budget reached)\n";
  }
  std::cout << "wrote " << a.group << " " << a.kind << "_n to " << path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// model

struct ModelArgs {
  double q = 1.0;
  double p = 0.5;
  double alpha = 0.0;
  double beta = 0.335;
  std::size_t max_len = 300;
  std::string out = "model";
};

int cmd_model(const GlobalOptions& g, const ModelArgs& a) {
  if (!(a.beta > 0.0)) throw UsageError("--beta must be positive");
  RunManifest manifest("model", g.argv);
  manifest.set_parameters({{"q", a.q}, {"p", a.p}, {"alpha", a.alpha}, {"beta", a.beta}, {"max_len", a.max_len}});
  const auto logc = model_cogrowth(a.q, a.p, a.max_len);
  const auto curve = model_curve(a.q, a.p, a.alpha, a.beta, a.max_len);
  const double top = *std::max_element(curve.begin(), curve.end());

  std::ostringstream body;
  body << "n,log_c_n,log_weight,relative_weight\n";
  for (std::size_t n = 0; n < curve.size(); ++n) {
    body << n << ',' << format_exact(logc[n]) << ',' << format_exact(curve[n]) << ','
         << format_sci(std::exp(curve[n] - top)) << '\n';
  }
  const fs::path path = prepare_output(g, a.out + ".csv");
  write_file(path, body.str());
  manifest.add_output(path);
  manifest.write(prepare_output(g, a.out + ".manifest.json"));

  const auto peaks = interior_maxima(curve);
  std::cout << "interior maxima:";
  if (peaks.empty()) std::cout << " none";
  for (auto n : peaks) std::cout << ' ' << n;
  std::cout << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// diagnose

struct DiagnoseArgs {
  std::vector<std::string> records;
  double floor = 0.001;
  std::string out = "diagnose";
};

int cmd_diagnose(const GlobalOptions& g, const DiagnoseArgs& a) {
  RunManifest manifest("diagnose", g.argv);
  manifest.set_parameters({{"floor", a.floor}});
  std::ostringstream body;
  body << "record,relator,relator_word,accepted,share,below_floor\n";
  bool warned = false;
  bool diverged = false;
  for (const auto& f : a.records) {
    const WalkRecord rec = load_record_checked(f);
    manifest.add_input(f);
    const Presentation pres = parse_presentation(rec.presentation);
    const RelatorBalance bal = diagnose_relator_balance(rec, a.floor);
    const auto& s = rec.proposal_stats;
    std::cout << f << ": " << rec.presentation << '\n'
              << "  status " << (rec.status == WalkStatus::completed ? "completed" : "diverged") << ", steps "
              << rec.steps_done << ", mean length " << mean_length(rec) << ", max length " << rec.max_length_seen
              << '\n'
              << "  conjugations accepted " << s.conjugations_accepted << "/" << s.conjugations_proposed
              << ", insertions accepted " << s.insertions_accepted << "/" << s.insertions_proposed << " ("
              << s.insertions_unreduced << " rejected as unreduced)\n";
    for (const auto& sh : bal.shares) {
      const std::string word = pres.alphabet().render(pres.user_relators()[sh.relator].word);
      std::cout << "  relator " << sh.relator << " " << word << ": accepted " << sh.accepted << " share " << sh.share
                << (sh.share < a.floor ? "  <-- below floor" : "") << '\n';
      body << f << ',' << sh.relator << ',' << word << ',' << sh.accepted << ',' << format_exact(sh.share) << ','
           << (sh.share < a.floor ? 1 : 0) << '\n';
    }
    warned = warned || bal.wrong_group_warning;
    diverged = diverged || rec.status == WalkStatus::diverged;
  }
  const fs::path path = prepare_output(g, a.out + ".csv");
  write_file(path, body.str());
  manifest.add_output(path);
  manifest.write(prepare_output(g, a.out + ".manifest.json"));
  if (warned) {
    std::cerr << "warning: some relator was accepted less than " << a.floor
              << " of the time; the walks may not sample the intended group\n";
  }
  if (diverged) std::cerr << "warning: some walks diverged\n";
  return warned && g.strict ? kWrongGroup : kOk;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Cogrowth estimation with ERR random walks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  GlobalOptions g;
  g.argv = args;
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "Directory for all output files");
  app.add_option("--seed", g.seed, "Base random seed (walks use stream = grid index)");
  app.add_option("--threads", g.threads, "Worker threads for walk grids (0: OpenMP default)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--strict", g.strict, "Exit nonzero on wrong-group warnings");

  WalkArgs wa;
  auto* walk = app.add_subcommand("walk", "Run ERR random walks and write visit histograms");
  walk->add_option("--preset", wa.preset, "trivial-family:N, bs:1:N, zk:K, thompson-f, surface2, braid3");
  walk->add_option("--presentation", wa.presentation, "Presentation file: 'gens: a b ; rels: abAB'");
  walk->add_option("--alpha", wa.alphas, "alpha (repeat or comma-separate for a grid)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  walk->add_option("--beta", wa.betas, "beta in (0,1) (repeat or comma-separate for a grid)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  walk->add_option("--steps", wa.steps, "Proposals per walk, e.g. 1e8");
  walk->add_option("--segments", wa.segments, "Segments M for the error estimate");
  walk->add_option("--stride", wa.stride, "Sample the length every stride-th step");
  walk->add_option("--max-word-len", wa.max_word_len, "Abort a walk whose word exceeds this length");
  walk->add_option("--repeats", wa.repeats, "Independent walks per (alpha, beta) point")->check(CLI::PositiveNumber);
  walk->add_option("--floor", wa.floor, "Relator acceptance share below which to warn");
  walk->add_option("--out", wa.out, "Output base name");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "Estimate cogrowth coefficients from walk records");
  estimate->add_option("records", ea.records, "Walk histogram CSVs (sidecars alongside)")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  estimate->add_option("--window", ea.window, "Anchor window");
  estimate->add_option("--cutoff", ea.cutoff, "Fraction of a record's highest W_n below which W_n is ignored");
  estimate->add_option("--max-len", ea.max_len, "Largest length to estimate");
  estimate->add_option("--burn-in-segments", ea.burn_in, "Leading segments to discard");
  estimate->add_option("--anchors-file", ea.anchors_file, "Known exact coefficients (n,value)");
  estimate->add_flag("--chain", ea.chain, "Anchor each length on the previous estimate only");
  estimate->add_option("--out", ea.out, "Output base name");

  ConvertArgs ca;
  auto* convert = app.add_subcommand("convert", "Convert between cogrowth and reduced-cogrowth series");
  convert->add_option("--direction", ca.direction, "d2c or c2d")
      ->required()
      ->check(CLI::IsMember({"d2c", "c2d"}));
  convert->add_option("--p", ca.p, "Number of generators")->required()->check(CLI::PositiveNumber);
  convert->add_option("--order", ca.order, "Truncation order");
  convert->add_option("--coeffs", ca.coeffs, "Coefficient CSV (n,value)")->required();
  convert->add_option("--out", ca.out, "Output base name");

  RfunArgs ra;
  auto* rfun = app.add_subcommand("rfun", "Tabulate R(n) from coefficients or the hypothetical model");
  rfun->add_option("--coeffs", ra.coeffs, "Coefficient CSV (n,value)");
  rfun->add_option("--limit-root", ra.limit_root, "Limiting growth rate (not inferred from data)")->required();
  rfun->add_option("--n-max", ra.n_max, "Tabulate n = 1..n-max");
  rfun->add_option("--model-q", ra.model_q, "Model c_n = 3^(n - q n^p): q");
  rfun->add_option("--model-p", ra.model_p, "Model c_n = 3^(n - q n^p): p");
  rfun->add_option("--model-len", ra.model_len, "Number of model coefficients to generate");
  rfun->add_option("--out", ra.out, "Output base name");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Exact cogrowth values from word-problem solvers");
  oracle->add_option("--group", oa.group, "zk:K, free:K, bs:1:N, trivial-family:N, thompson-f (alias f-paper)")->required();
  oracle->add_option("--kind", oa.kind, "c (reduced) or d (all words)")->check(CLI::IsMember({"c", "d"}));
  oracle->add_option("--max-len", oa.max_len, "Largest length");
  oracle->add_option("--method", oa.method, "enumerate or dp-convert (kind c)")
      ->check(CLI::IsMember({"enumerate", "dp-convert"}));
  oracle->add_option("--out", oa.out, "Output base name");

  ModelArgs ma;
  auto* modelc = app.add_subcommand("model", "Stationary weight curve of the hypothetical model");
  modelc->add_option("--q", ma.q, "q");
  modelc->add_option("--p", ma.p, "p");
  modelc->add_option("--alpha", ma.alpha, "alpha");
  modelc->add_option("--beta", ma.beta, "beta");
  modelc->add_option("--max-len", ma.max_len, "Largest length");
  modelc->add_option("--out", ma.out, "Output base name");

  DiagnoseArgs da;
  auto* diagnose = app.add_subcommand("diagnose", "Relator acceptance balance of walk records");
  diagnose->add_option("records", da.records, "Walk histogram CSVs")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  diagnose->add_option("--floor", da.floor, "Share below which to warn");
  diagnose->add_option("--out", da.out, "Output base name");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  g.out_dir = out_dir;

  if (walk->parsed()) return cmd_walk(g, wa);
  if (estimate->parsed()) return cmd_estimate(g, ea);
  if (convert->parsed()) return cmd_convert(g, ca);
  if (rfun->parsed()) return cmd_rfun(g, ra);
  if (oracle->parsed()) return cmd_oracle(g, oa);
  if (modelc->parsed()) return cmd_model(g, ma);
  if (diagnose->parsed()) return cmd_diagnose(g, da);
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    // `--replay MANIFEST` reruns the recorded command line; any other
    // arguments (e.g. --out-dir) are appended and override the recorded ones.
    const auto at = std::find(args.begin(), args.end(), "--replay");
    if (at != args.end()) {
      if (at + 1 == args.end()) throw UsageError("--replay needs a manifest file");
      std::vector<std::string> replay = manifest_argv(*(at + 1));
      if (replay.empty()) throw UsageError("manifest records an empty command line");
      replay.insert(replay.end(), args.begin(), at);
      replay.insert(replay.end(), at + 2, args.end());
      return dispatch(replay);
    }
    return dispatch(args);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace cogrowth::cli
