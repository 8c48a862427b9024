// Copyright 2026 The hybridsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "hybridsim/streaks.hpp"
#include "json_util.hpp"

namespace hybridsim {
namespace {

using json_util::json;

json geometry_to_json(const LesionGeometry& g) {
  json j;
  j["centroid"] = {g.centroid.x, g.centroid.y};
  j["major_axis_len"] = g.major_axis_len;
  j["minor_axis_len"] = g.minor_axis_len;
  j["orientation"] = g.orientation;
  j["area"] = g.area;
  return j;
}

json criteria_fields(const StreakCriteria& c) {
  json j;
  j["min_count"] = c.min_count;
  j["len_min_frac"] = c.len_min_frac;
  j["len_max_frac"] = c.len_max_frac;
  j["border_band_frac"] = c.border_band_frac;
  j["radial_dev_max"] = c.radial_dev_max;
  j["darkness_factor"] = c.darkness_factor;
  j["straightness_min"] = c.straightness_min;
  return j;
}

json filter_fields(const FilterParams& p) {
  json j = json::object();
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("wavelength", p.wavelength);
  put("gabor_sigma", p.gabor_sigma);
  j["gabor_gamma"] = p.gabor_gamma;
  put("log_sigma", p.log_sigma);
  j["orientations"] = p.orientations;
  j["threshold"] = p.threshold == RidgeThreshold::kOtsu ? "otsu" : "percentile";
  j["threshold_percentile"] = p.threshold_percentile;
  j["dark_lesion"] = p.dark_lesion;
  put("rim_margin", p.rim_margin);
  put("min_ridge_area", p.min_ridge_area);
  j["max_hole_area"] = p.max_hole_area;
  put("spur_length", p.spur_length);
  return j;
}

std::size_t count_or(const json& j, const char* key, std::size_t fallback,
                     const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j[key];
  if (!v.is_number_integer() || v.get<long long>() < 0)
    json_util::schema_error(where, std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

std::string criteria_to_json(const DetectionConfig& config) {
  json root = criteria_fields(config.criteria);
  root["filter"] = filter_fields(config.filter);
  return root.dump(2) + "\n";
}

DetectionConfig parse_criteria_json(std::string_view text, const DetectionConfig& base) {
  const json root = json_util::parse(text, "criteria");
  const std::string where = "criteria";
  json_util::expect_object(root, where);
  json_util::reject_unknown_keys(root, where,
                                 {"min_count", "len_min_frac", "len_max_frac", "border_band_frac",
                                  "radial_dev_max", "darkness_factor", "straightness_min",
                                  "filter"});
  DetectionConfig out = base;
  StreakCriteria& c = out.criteria;
  if (root.contains("min_count")) {
    if (!root["min_count"].is_number_integer())
      json_util::schema_error(where, "'min_count' must be an integer");
    c.min_count = root["min_count"].get<int>();
  }
  c.len_min_frac = json_util::number_or(root, "len_min_frac", c.len_min_frac, where);
  c.len_max_frac = json_util::number_or(root, "len_max_frac", c.len_max_frac, where);
  c.border_band_frac = json_util::number_or(root, "border_band_frac", c.border_band_frac, where);
  c.radial_dev_max = json_util::number_or(root, "radial_dev_max", c.radial_dev_max, where);
  c.darkness_factor = json_util::number_or(root, "darkness_factor", c.darkness_factor, where);
  c.straightness_min = json_util::number_or(root, "straightness_min", c.straightness_min, where);

  if (root.contains("filter")) {
    const json& f = root["filter"];
    const std::string fw = where + ".filter";
    json_util::expect_object(f, fw);
    json_util::reject_unknown_keys(
        f, fw,
        {"wavelength", "gabor_sigma", "gabor_gamma", "log_sigma", "orientations", "threshold",
         "threshold_percentile", "dark_lesion", "rim_margin", "min_ridge_area", "max_hole_area",
         "spur_length"});
    FilterParams& p = out.filter;
    auto opt = [&](const char* key, std::optional<double>& slot) {
      if (f.contains(key)) slot = json_util::number(f, key, fw);
    };
    opt("wavelength", p.wavelength);
    opt("gabor_sigma", p.gabor_sigma);
    opt("log_sigma", p.log_sigma);
    opt("spur_length", p.spur_length);
    p.gabor_gamma = json_util::number_or(f, "gabor_gamma", p.gabor_gamma, fw);
    if (f.contains("orientations")) {
      const json& o = f["orientations"];
      json_util::expect_array(o, fw + ".orientations");
      p.orientations.clear();
      for (const json& v : o) {
        if (!v.is_number()) json_util::schema_error(fw, "orientations must be numbers");
        p.orientations.push_back(v.get<double>());
      }
    }
    if (f.contains("threshold")) {
      const std::string m = json_util::string(f, "threshold", fw);
      if (m == "otsu")
        p.threshold = RidgeThreshold::kOtsu;
      else if (m == "percentile")
        p.threshold = RidgeThreshold::kPercentile;
      else
        json_util::schema_error(fw, "threshold must be \"otsu\" or \"percentile\"");
    }
    p.threshold_percentile =
        json_util::number_or(f, "threshold_percentile", p.threshold_percentile, fw);
    p.dark_lesion = json_util::boolean_or(f, "dark_lesion", p.dark_lesion, fw);
    if (f.contains("rim_margin")) {
      if (!f["rim_margin"].is_number_integer())
        json_util::schema_error(fw, "'rim_margin' must be an integer");
      p.rim_margin = f["rim_margin"].get<int>();
    }
    if (f.contains("min_ridge_area")) p.min_ridge_area = count_or(f, "min_ridge_area", 0, fw);
    p.max_hole_area = count_or(f, "max_hole_area", p.max_hole_area, fw);
  }
  try {
    validate(out.criteria);
    validate(out.filter);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("criteria: ") + e.what());
  }
  return out;
}

std::string report_to_json(const StreakReport& r) {
  json root;
  root["streaks_present"] = r.streaks_present;
  root["qualifying_count"] = r.qualifying_count;
  root["source_geometry"] = geometry_to_json(r.source_geometry);
  root["geometry"] = geometry_to_json(r.geometry);
  root["criteria"] = criteria_fields(r.criteria);
  json filter;
  filter["wavelength"] = r.filter.wavelength;
  filter["gabor_sigma"] = r.filter.gabor_sigma;
  filter["gabor_gamma"] = r.filter.gabor_gamma;
  filter["log_sigma"] = r.filter.log_sigma;
  filter["rim_margin"] = r.filter.rim_margin;
  filter["min_ridge_area"] = r.filter.min_ridge_area;
  filter["spur_length"] = r.filter.spur_length;
  root["filter"] = filter;
  json rows = json::array();
  for (const SegmentVerdict& v : r.segments) {
    json row;
    row["id"] = v.id;
    row["length"] = v.length;
    row["midpoint"] = {v.midpoint.x, v.midpoint.y};
    row["border_distance"] = v.border_distance;
    row["radial_deviation"] = v.radial_deviation;
    row["straightness"] = v.straightness;
    row["mean_intensity"] = v.mean_intensity;
    row["neighborhood_intensity"] = v.neighborhood_intensity;
    row["branch_attached"] = v.is_branch_attached;
    row["location"] = v.location;
    row["coradial"] = v.coradial;
    row["darkness"] = v.darkness;
    row["shape"] = v.shape;
    row["qualifies"] = v.qualifies();
    rows.push_back(row);
  }
  root["segments"] = rows;
  return root.dump(2) + "\n";
}

}  // namespace hybridsim
