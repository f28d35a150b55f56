// cordic: command-line front end for the fixed-point CORDIC model.
//
//   cordic rotate --theta 0.5 [--trace]
//   cordic vector --x 0.6 --y 0.6
//   cordic table1 [--paper-format] [--out table1.csv]
//   cordic mse --trials 100000 --seed 7 [--json report.json]
//   cordic sweep --bits 8,12,15
//   cordic export-rom --out rom/
//
// Exit codes: 0 success, 1 usage or parse error, 2 angle/vector out of
// range, 3 fixed-point overflow, 4 I/O failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cordic/errors.hpp"
#include "cordic/harness.hpp"
#include "cordic/report.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kOutOfRange = 2, kOverflow = 3, kIo = 4 };

struct ProfileOptions {
  std::string profile = "paper";
  std::optional<int> stages;
  std::optional<int> start_index;
  std::optional<int> frac_bits;
  std::optional<int> guard_bits;
  std::optional<std::string> rounding;
  std::optional<std::string> init;

  void attach(CLI::App* app, bool with_frac_bits = true) {
    app->add_option("--profile", profile, "Base parameter profile")
        ->check(CLI::IsMember({"paper", "standard"}))
        ->capture_default_str();
    app->add_option("--stages", stages, "Number of pipeline stages N");
    app->add_option("--start-index", start_index, "First shift exponent (0 or 1)");
    if (with_frac_bits) app->add_option("--frac-bits", frac_bits, "Fractional bits b");
    app->add_option("--guard-bits", guard_bits, "Extra integer bits on the datapath");
    app->add_option("--rounding", rounding, "nearest-away | nearest-even | truncate");
    app->add_option("--init", init, "Initial x for rotation: one | one-minus-ulp")
        ->check(CLI::IsMember({"one", "one-minus-ulp"}));
  }

  cordic::CordicParams resolve() const {
    cordic::CordicParams p = profile == "standard" ? cordic::standard_profile() : cordic::paper_profile();
    if (stages) p.stages = *stages;
    if (start_index) p.start_index = *start_index;
    if (frac_bits) p.frac_bits = *frac_bits;
    if (guard_bits) p.guard_int_bits = *guard_bits;
    if (rounding) p.rounding = cordic::parse_rounding_mode(*rounding);
    if (init) p.initial_x = *init == "one" ? cordic::InitialX::One : cordic::InitialX::OneMinusUlp;
    cordic::validate(p);
    return p;
  }
};

std::string num(double v) { return cordic::format_shortest(v); }

void run_rotate(const cordic::CordicParams& params, double theta, bool trace) {
  const cordic::Rom rom = cordic::build_rom(params);
  const cordic::Fixed q = cordic::quantize_angle(theta, params);
  const auto r = cordic::pipeline_rotate(q, params, rom);
  const double tq = cordic::to_real(q);
  std::cout << "theta " << num(theta) << "\n"
            << "theta_quantized " << num(tq) << " " << cordic::to_hex(q) << "\n"
            << "cos " << num(cordic::to_real(r.cos_out)) << " " << cordic::to_hex(r.cos_out) << "\n"
            << "sin " << num(cordic::to_real(r.sin_out)) << " " << cordic::to_hex(r.sin_out) << "\n"
            << "cos_err " << num(cordic::to_real(r.cos_out) - std::cos(tq)) << "\n"
            << "sin_err " << num(cordic::to_real(r.sin_out) - std::sin(tq)) << "\n";
  if (trace) std::cout << cordic::format_trace(r.trace);
}

void run_vector(const cordic::CordicParams& params, double x, double y, bool trace) {
  const cordic::Rom rom = cordic::build_rom(params);
  const auto fmt = cordic::datapath_format(params);
  const auto r = cordic::pipeline_vector(cordic::quantize(x, fmt, params.rounding),
                                         cordic::quantize(y, fmt, params.rounding), params, rom);
  std::cout << "angle " << num(cordic::to_real(r.angle)) << " " << cordic::to_hex(r.angle) << "\n"
            << "magnitude " << num(cordic::to_real(r.magnitude)) << " " << cordic::to_hex(r.magnitude) << "\n"
            << "angle_err " << num(cordic::to_real(r.angle) - std::atan2(y, x)) << "\n";
  if (trace) std::cout << cordic::format_trace(r.trace);
}

std::vector<int> parse_bits(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw cordic::ParseError("bad bit width '" + item + "' in --bits");
    out.push_back(v);
  }
  if (out.empty()) throw cordic::ParseError("--bits needs at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point CORDIC rotator model and error-analysis harness"};
  app.require_subcommand(1);

  ProfileOptions rotate_opts, vector_opts, table_opts, mse_opts, sweep_opts, rom_opts;

  auto* rotate = app.add_subcommand("rotate", "Rotate (1, 0) by theta through the fixed-point pipeline");
  double theta = 0.0;
  bool rotate_trace = false;
  rotate->add_option("--theta", theta, "Angle in radians")->required();
  rotate->add_flag("--trace", rotate_trace, "Dump per-stage x/y/z hex words");
  rotate_opts.attach(rotate);

  auto* vector = app.add_subcommand("vector", "Angle and magnitude of (x, y) in vectoring mode");
  double vx = 0.0, vy = 0.0;
  bool vector_trace = false;
  vector->add_option("--x", vx, "x component")->required();
  vector->add_option("--y", vy, "y component")->required();
  vector->add_flag("--trace", vector_trace, "Dump per-stage x/y/z hex words");
  vector_opts.attach(vector);

  auto* table1 = app.add_subcommand("table1", "Replicate the 19-angle FPGA error table");
  bool paper_format = false, show_quantized = false;
  std::string table_out;
  table1->add_flag("--paper-format", paper_format, "Four decimals with signed zeros");
  table1->add_flag("--show-quantized", show_quantized, "Add the quantized angle column");
  table1->add_option("--out", table_out, "Output CSV path (default stdout)");
  table_opts.attach(table1);

  auto* mse = app.add_subcommand("mse", "Monte Carlo MSE against the theoretical budget");
  std::uint64_t trials = 100000, seed = 1;
  unsigned workers = 0;
  std::string json_out;
  mse->add_option("--trials", trials, "Number of random angles")->capture_default_str();
  mse->add_option("--seed", seed, "Random seed")->capture_default_str();
  mse->add_option("--workers", workers, "Worker threads (0 = all cores)");
  mse->add_option("--json", json_out, "Output JSON path (default stdout)");
  mse_opts.attach(mse);

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo MSE for several fractional bit widths");
  std::string bits_list;
  std::uint64_t sweep_trials = 100000, sweep_seed = 1;
  unsigned sweep_workers = 0;
  std::string sweep_out;
  sweep->add_option("--bits", bits_list, "Comma-separated fractional bit widths, e.g. 8,12,15")->required();
  sweep->add_option("--trials", sweep_trials, "Number of random angles per width")->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "Random seed shared by every width")->capture_default_str();
  sweep->add_option("--workers", sweep_workers, "Worker threads (0 = all cores)");
  sweep->add_option("--json", sweep_out, "Output JSON path (default stdout)");
  sweep_opts.attach(sweep, false);

  auto* export_rom = app.add_subcommand("export-rom", "Write atan_rom.hex and scale_rom.hex");
  std::string rom_dir;
  export_rom->add_option("--out", rom_dir, "Destination directory")->required();
  rom_opts.attach(export_rom);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*rotate) {
      run_rotate(rotate_opts.resolve(), theta, rotate_trace);
    } else if (*vector) {
      run_vector(vector_opts.resolve(), vx, vy, vector_trace);
    } else if (*table1) {
      const auto rows = cordic::run_table1(table_opts.resolve());
      cordic::write_output(cordic::table1_csv(rows, {paper_format, show_quantized}), table_out, std::cout);
    } else if (*mse) {
      const auto report = cordic::monte_carlo_mse(mse_opts.resolve(), trials, seed, workers);
      cordic::write_output(cordic::to_json(report), json_out, std::cout);
    } else if (*sweep) {
      const auto reports =
          cordic::sweep_bits(sweep_opts.resolve(), parse_bits(bits_list), sweep_trials, sweep_seed, sweep_workers);
      cordic::write_output(cordic::to_json(reports), sweep_out, std::cout);
    } else if (*export_rom) {
      for (const auto& path : cordic::export_rom(rom_opts.resolve(), rom_dir)) std::cout << path.string() << "\n";
    }
  } catch (const cordic::OutOfRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOutOfRange;
  } catch (const cordic::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOutOfRange;
  } catch (const cordic::OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOverflow;
  } catch (const cordic::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
