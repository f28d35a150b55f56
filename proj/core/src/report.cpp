#include "cordic/report.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "cordic/errors.hpp"
#include "json.hpp"

namespace cordic {
namespace {

using nlohmann::json;

std::string cordic_mode_name(CordicMode m) { return m == CordicMode::Rotation ? "rotation" : "vectoring"; }
std::string initial_x_name(InitialX x) { return x == InitialX::One ? "one" : "one-minus-ulp"; }

json params_json(const CordicParams& p) {
  return json{{"stages", p.stages},
              {"start_index", p.start_index},
              {"frac_bits", p.frac_bits},
              {"guard_int_bits", p.guard_int_bits},
              {"rounding", std::string(to_string(p.rounding))},
              {"mode", cordic_mode_name(p.mode)},
              {"initial_x", initial_x_name(p.initial_x)}};
}

CordicParams params_from(const json& j) {
  CordicParams p;
  p.stages = j.at("stages").get<int>();
  p.start_index = j.at("start_index").get<int>();
  p.frac_bits = j.at("frac_bits").get<int>();
  p.guard_int_bits = j.at("guard_int_bits").get<int>();
  p.rounding = parse_rounding_mode(j.at("rounding").get<std::string>());
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "rotation") p.mode = CordicMode::Rotation;
  else if (mode == "vectoring") p.mode = CordicMode::Vectoring;
  else throw ParseError("unknown mode '" + mode + "'");
  const auto init = j.at("initial_x").get<std::string>();
  if (init == "one") p.initial_x = InitialX::One;
  else if (init == "one-minus-ulp") p.initial_x = InitialX::OneMinusUlp;
  else throw ParseError("unknown initial_x '" + init + "'");
  return p;
}

json breakdown_json(const ErrorBreakdown& b) {
  return json{{"angle_mse", b.angle_mse},
              {"scaling_mse", b.scaling_mse},
              {"rounding_mse", b.rounding_mse},
              {"total_mse", b.total_mse},
              {"epsilon", b.epsilon},
              {"delta", b.delta},
              {"assumes_independent_sources", true}};
}

ErrorBreakdown breakdown_from(const json& j) {
  ErrorBreakdown b;
  b.angle_mse = j.at("angle_mse").get<double>();
  b.scaling_mse = j.at("scaling_mse").get<double>();
  b.rounding_mse = j.at("rounding_mse").get<double>();
  b.total_mse = j.at("total_mse").get<double>();
  b.epsilon = j.at("epsilon").get<double>();
  b.delta = j.at("delta").get<double>();
  return b;
}

json report_json(const MseReport& r) {
  json j{{"theoretical", breakdown_json(r.theoretical)},
         {"empirical_mse", r.empirical_mse},
         {"empirical_std_error", r.empirical_std_error},
         {"empirical_rounding_mse", r.empirical_rounding_mse},
         {"closed_form_vs_empirical_rounding_ratio", nullptr},
         {"trials", r.trials},
         {"seed", r.seed},
         {"params", params_json(r.params)}};
  if (r.closed_form_vs_empirical_rounding_ratio) j["closed_form_vs_empirical_rounding_ratio"] = *r.closed_form_vs_empirical_rounding_ratio;
  return j;
}

}  // namespace

std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_paper(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  std::string s(buf);
  if (std::signbit(value) && s.front() != '-') s.insert(s.begin(), '-');
  return s;
}

std::string table1_csv(const std::vector<Table1Row>& rows, const CsvOptions& options) {
  const auto fmt = options.paper_format ? format_paper : format_shortest;
  std::string out = options.show_quantized ? "angle_rad,angle_quantized,cos_err,sin_err\n"
                                           : "angle_rad,cos_err,sin_err\n";
  for (const Table1Row& r : rows) {
    out += fmt(r.angle_rad);
    if (options.show_quantized) out += ',' + fmt(r.angle_quantized);
    out += ',' + fmt(r.cos_err) + ',' + fmt(r.sin_err) + '\n';
  }
  return out;
}

std::string to_json(const MseReport& report) { return report_json(report).dump(2) + '\n'; }

std::string to_json(const std::vector<std::pair<int, MseReport>>& sweep) {
  json rows = json::array();
  for (const auto& [b, report] : sweep) rows.push_back(json{{"frac_bits", b}, {"report", report_json(report)}});
  return rows.dump(2) + '\n';
}

MseReport mse_report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    MseReport r;
    r.theoretical = breakdown_from(j.at("theoretical"));
    r.empirical_mse = j.at("empirical_mse").get<double>();
    r.empirical_std_error = j.at("empirical_std_error").get<double>();
    r.empirical_rounding_mse = j.at("empirical_rounding_mse").get<double>();
    const json& ratio = j.at("closed_form_vs_empirical_rounding_ratio");
    if (!ratio.is_null()) r.closed_form_vs_empirical_rounding_ratio = ratio.get<double>();
    r.trials = j.at("trials").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.params = params_from(j.at("params"));
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed MSE report: ") + e.what());
  }
}

void write_output(const std::string& contents, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
    out.flush();
    if (!out) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path + ": " + std::strerror(errno));
  file << contents;
  file.flush();
  if (!file) throw IoError("cannot write " + path + ": " + std::strerror(errno));
}

}  // namespace cordic
