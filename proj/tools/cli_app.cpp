#include "cli_app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "robinsl/f_map.hpp"
#include "robinsl/json_io.hpp"
#include "robinsl/robinsl.hpp"

namespace robinsl::cli {

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad number in list: '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open potential file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void validate(const CliConfig& c) {
  c.bc.validate();
  if (!(c.tol > 1e-14 && c.tol < 1e-2)) throw InvalidArgument("tol must lie in (1e-14, 1e-2)");
  if (c.command == Command::scan_f) {
    if (c.mu_steps < 1 || c.zeta_steps < 2) throw InvalidArgument("scan-f needs mu-steps >= 1, zeta-steps >= 2");
    if (c.mu_max < c.mu_min) throw InvalidArgument("mu-max must be >= mu-min");
  }
  if (c.command == Command::verify) {
    if (c.samples < 0) throw InvalidArgument("samples must be >= 0");
    if (c.pieces_max < 1 || c.pieces_max > kMaxPieces) throw InvalidArgument("pieces-max must be in [1, 64]");
    if (c.jobs < 1) throw InvalidArgument("jobs must be >= 1");
    if (c.approach_depth != 0 && (c.approach_depth < 2 || c.approach_depth > 14))
      throw InvalidArgument("approach-depth must be 0 or in [2, 14]");
  }
  if (c.command == Command::eigen && c.grid_points < 1001)
    throw InvalidArgument("grid-points must be >= 1001");
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const std::string& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  row += '\n';
  return row;
}

std::string num(double v) { return format_number(v, false); }

std::string run_eigen(const CliConfig& c, const std::string& file) {
  const Potential q = parse_potential(read_file(file));
  const EigenResult r = lambda1(q, c.bc, c.tol, static_cast<std::size_t>(c.grid_points));
  if (c.format == Format::csv) {
    std::string out = "x,y\n";
    for (const Sample& s : r.eigenfunction) out += csv_row({num(s.x), num(s.y)});
    return out;
  }
  return eigen_result_to_json(r, c.bc) + "\n";
}

std::string run_extrema(const CliConfig& c, std::ostream& err) {
  if (c.grid_k0sq.empty()) {
    const auto reps = compute_all_extrema(c.bc);
    if (c.format == Format::csv) {
      std::string out = "kind,value,cross_check,branch\n";
      for (const auto& r : reps) out += csv_row({to_string(r.kind), num(r.value), num(r.cross_check), r.branch});
      return out;
    }
    return extrema_to_json(c.bc, reps) + "\n";
  }
  std::string out = "k0sq,k1sq,M1plus,M1minus,m1plus,m1minus\n";
  for (double k0 : c.grid_k0sq) {
    for (double k1 : c.grid_k1sq) {
      const RobinBC bc{k0, k1};
      try {
        bc.validate();
      } catch (const InvalidArgument& e) {
        err << "skipping (" << num(k0) << ", " << num(k1) << "): " << e.what() << "\n";
        continue;
      }
      const auto r = compute_all_extrema(bc);
      out += csv_row({num(k0), num(k1), num(r[0].value), num(r[1].value), num(r[2].value), num(r[3].value)});
    }
  }
  return out;
}

std::string run_scan_f(const CliConfig& c) {
  std::string out = "mu,zeta,in_domain,F,dF_dzeta\n";
  for (int i = 0; i < c.mu_steps; ++i) {
    const double mu =
        c.mu_steps == 1 ? c.mu_min : c.mu_min + (c.mu_max - c.mu_min) * i / (c.mu_steps - 1);
    for (int j = 0; j < c.zeta_steps; ++j) {
      const double zeta = j == c.zeta_steps - 1 ? 1.0 : static_cast<double>(j) / (c.zeta_steps - 1);
      const FPoint p = F(mu, zeta, c.bc);
      const double d = p.in_domain ? dF_dzeta(mu, zeta, c.bc) : std::numeric_limits<double>::quiet_NaN();
      out += csv_row({num(mu), num(zeta), p.in_domain ? "1" : "0", num(p.value), num(d)});
    }
  }
  return out;
}

}  // namespace

int run(const CliConfig& config, const std::optional<std::string>& potential_file, std::ostream& out,
        std::ostream& err) {
  std::string text;
  int code = kExitOk;
  try {
    validate(config);
    switch (config.command) {
      case Command::eigen:
        if (!potential_file) throw InvalidArgument("eigen needs a potential JSON file");
        text = run_eigen(config, *potential_file);
        break;
      case Command::extrema:
        text = run_extrema(config, err);
        break;
      case Command::scan_f:
        text = run_scan_f(config);
        break;
      case Command::verify: {
        CheckOptions opt;
        opt.class_sign = config.class_sign;
        opt.concentrated = config.concentrated;
        opt.jobs = config.jobs;
        opt.approach_depth = config.approach_depth;
        opt.tol = config.tol;
        const SampleReport rep =
            check_bounds(config.bc, config.samples, config.pieces_max, config.seed, opt);
        text = sample_report_to_json(rep) + "\n";
        if (!rep.violations.empty()) code = kExitViolations;
        break;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream f(config.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << config.output << "'\n";
      return kExitInputError;
    }
    f << text;
  }
  return code;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-eigenvalue extrema for Robin Sturm-Liouville problems"};
  app.name("robinsl");
  app.require_subcommand(1);
  CliConfig cfg;
  std::string potential_file;
  std::string format = "json";
  std::vector<std::string> grid;
  std::string class_name = "both";

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--k0sq", cfg.bc.k0sq, "Robin coefficient at x=0 (k0^2)");
    sub->add_option("--k1sq", cfg.bc.k1sq, "Robin coefficient at x=1 (k1^2)");
    sub->add_option("--tol", cfg.tol, "eigensolver bracket tolerance");
    sub->add_option("--seed", cfg.seed, "PRNG seed");
    sub->add_option("-o,--output", cfg.output, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* eigen = app.add_subcommand("eigen", "first eigenvalue and eigenfunction of a potential");
  common(eigen);
  eigen->add_option("potential", potential_file, "potential JSON file")->required();
  eigen->add_option("--grid-points", cfg.grid_points, "uniform eigenfunction samples");

  CLI::App* extrema = app.add_subcommand("extrema", "M1+, M1-, m1+, m1- and their extremal potentials");
  common(extrema);
  extrema->add_option("--grid", grid, "k0sq list and k1sq list, comma separated (CSV table)")
      ->expected(2);

  CLI::App* scan = app.add_subcommand("scan-f", "tabulate F(mu, zeta) and dF/dzeta as CSV");
  common(scan);
  scan->add_option("--mu-min", cfg.mu_min);
  scan->add_option("--mu-max", cfg.mu_max);
  scan->add_option("--mu-steps", cfg.mu_steps);
  scan->add_option("--zeta-steps", cfg.zeta_steps);

  CLI::App* verify = app.add_subcommand("verify", "sample the admissible classes and check the bounds");
  common(verify);
  verify->add_option("-n,--samples", cfg.samples, "number of sampled potentials");
  verify->add_option("--pieces-max", cfg.pieces_max, "maximum pieces per sample (<= 64)");
  verify->add_option("--class", class_name, "plus, minus or both")
      ->check(CLI::IsMember({"plus", "minus", "both"}));
  verify->add_option("--jobs", cfg.jobs, "worker threads");
  verify->add_option("--approach-depth", cfg.approach_depth, "log2 of the finest delta approximant");
  verify->add_flag("--concentrated", cfg.concentrated, "mix in window-confined samples");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  if (eigen->parsed()) cfg.command = Command::eigen;
  if (extrema->parsed()) cfg.command = Command::extrema;
  if (scan->parsed()) {
    cfg.command = Command::scan_f;
    format = "csv";
  }
  if (verify->parsed()) cfg.command = Command::verify;
  cfg.format = format == "csv" ? Format::csv : Format::json;
  cfg.class_sign = class_name == "plus" ? 1 : (class_name == "minus" ? -1 : 0);
  if (!grid.empty()) {
    try {
      cfg.grid_k0sq = parse_list(grid[0]);
      cfg.grid_k1sq = parse_list(grid[1]);
    } catch (const InvalidArgument& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    }
  }
  std::optional<std::string> file;
  if (!potential_file.empty()) file = potential_file;
  return run(cfg, file, out, err);
}

}  // namespace robinsl::cli
