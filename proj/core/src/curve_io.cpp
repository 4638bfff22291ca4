#include "slag/curve_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "slag/error.hpp"

namespace slag {

using ordered_json = nlohmann::ordered_json;

std::string curve_to_json(const GradedCurve& curve, int indent) {
  ordered_json doc;
  doc["version"] = kCurveFormatVersion;
  doc["ambient"] = curve.ambient.kind == AmbientKind::Cylinder ? "cylinder" : "plane";
  doc["circumference"] = curve.ambient.circumference;
  doc["closed"] = curve.closed;
  ordered_json rows = ordered_json::array();
  for (const auto& s : curve.samples) {
    rows.push_back(ordered_json::array({s.x, s.p, s.theta, s.f, s.component}));
  }
  doc["samples"] = std::move(rows);
  return doc.dump(indent);
}

GradedCurve curve_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::IoError, std::string("curve JSON: ") + e.what());
  }
  try {
    const int version = doc.value("version", kCurveFormatVersion);
    if (version != kCurveFormatVersion) {
      throw Error(ErrorCode::IoError, "unsupported curve format version " + std::to_string(version));
    }
    GradedCurve curve;
    const std::string ambient = doc.at("ambient").get<std::string>();
    if (ambient == "cylinder") {
      curve.ambient = Ambient::cylinder(doc.at("circumference").get<double>());
      if (!(curve.ambient.circumference > 0.0)) {
        throw Error(ErrorCode::IoError, "cylinder circumference must be positive");
      }
    } else if (ambient == "plane") {
      curve.ambient = Ambient::plane();
    } else {
      throw Error(ErrorCode::IoError, "unknown ambient '" + ambient + "'");
    }
    curve.closed = doc.at("closed").get<bool>();
    for (const auto& row : doc.at("samples")) {
      if (!row.is_array() || row.size() != 5) {
        throw Error(ErrorCode::IoError, "sample rows must be [x,p,theta,f,component]");
      }
      curve.samples.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
                               row[3].get<double>(), row[4].get<int>()});
    }
    components(curve);  // contiguity check
    return curve;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("curve JSON: ") + e.what());
  }
}

void save_curve(const GradedCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << curve_to_json(curve, 1) << '\n';
}

GradedCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return curve_from_json(buf.str());
}

std::string chain_to_json(const ChargeChain& chain, int indent) {
  ordered_json doc;
  doc["convention"] = chain.convention == ChargeConvention::RightHalfPlane ? "right" : "upper";
  ordered_json entries = ordered_json::array();
  for (const auto& e : chain.entries) {
    ordered_json row;
    row["label"] = e.label;
    row["re"] = e.z.real();
    row["im"] = e.z.imag();
    row["sup_f"] = e.sup_f;
    row["inf_f"] = e.inf_f;
    entries.push_back(std::move(row));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(indent);
}

ChargeChain chain_from_json(const std::string& text) {
  try {
    const auto doc = ordered_json::parse(text);
    ChargeChain chain;
    const std::string conv = doc.value("convention", std::string("right"));
    if (conv == "right") {
      chain.convention = ChargeConvention::RightHalfPlane;
    } else if (conv == "upper") {
      chain.convention = ChargeConvention::UpperHalfPlane;
    } else {
      throw Error(ErrorCode::IoError, "unknown convention '" + conv + "'");
    }
    for (const auto& row : doc.at("entries")) {
      ChargeEntry e;
      e.label = row.value("label", std::string());
      e.z = {row.at("re").get<double>(), row.at("im").get<double>()};
      e.sup_f = row.value("sup_f", 0.0);
      e.inf_f = row.value("inf_f", e.sup_f);
      chain.entries.push_back(std::move(e));
    }
    return chain;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("chain JSON: ") + e.what());
  }
}

ChargeChain load_chain(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return chain_from_json(buf.str());
}

}  // namespace slag
