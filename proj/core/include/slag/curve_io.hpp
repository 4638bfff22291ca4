#pragma once

#include <filesystem>
#include <string>

#include "slag/curve.hpp"
#include "slag/stability.hpp"

namespace slag {

inline constexpr int kCurveFormatVersion = 1;

/// {"version", "ambient", "circumference", "closed", "samples": [[x,p,theta,f,component], ...]}
std::string curve_to_json(const GradedCurve& curve, int indent = -1);
GradedCurve curve_from_json(const std::string& text);

void save_curve(const GradedCurve& curve, const std::filesystem::path& path);
GradedCurve load_curve(const std::filesystem::path& path);

/// {"convention": "right"|"upper", "entries": [{label, re, im, sup_f, inf_f}, ...]}
std::string chain_to_json(const ChargeChain& chain, int indent = -1);
ChargeChain chain_from_json(const std::string& text);
ChargeChain load_chain(const std::filesystem::path& path);

}  // namespace slag
