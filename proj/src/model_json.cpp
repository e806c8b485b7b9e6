#include "locest/model_json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "locest/errors.hpp"

namespace locest {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ParameterError(std::string("model field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double need_num(const json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("model is missing field '") + key + "'");
  return get_num(j, key, 0.0);
}

std::vector<double> num_list(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ParameterError(std::string("model field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) throw ParameterError(std::string("model field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

StepParams step_params(const json& j) {
  StepParams p;
  p.eps = need_num(j, "eps");
  p.v = num_list(j, "v");
  return p;
}

}  // namespace

json model_to_json(const DensityModel& model) {
  json j;
  j["kind"] = model.kind();
  j["center"] = model.center();
  std::visit(overloaded{
                 [&](const family::Gaussian& f) { j["sigma"] = f.sigma; },
                 [&](const family::Uniform& f) { j["half_width"] = f.half_width; },
                 [&](const family::Semicircle& f) { j["radius"] = f.radius; },
                 [&](const family::Mixture& f) {
                   j["weights"] = f.weights;
                   json comps = json::array();
                   for (const auto& c : f.components) comps.push_back(model_to_json(c));
                   j["components"] = comps;
                 },
                 [&](const family::UnifGaussConv& f) {
                   j["half_width"] = f.half_width;
                   j["sigma"] = f.sigma;
                 },
                 [&](const family::GaussianScaleMixture& f) {
                   j["weights"] = f.weights;
                   j["sigmas"] = f.sigmas;
                 },
                 [](const family::Triangle&) {},
                 [&](const family::Step& f) {
                   j["eps"] = f.params.eps;
                   j["v"] = f.params.v;
                 },
                 [&](const family::ModTriangle& f) { j["eps"] = f.eps; },
                 [&](const family::ModStep& f) {
                   j["eps"] = f.params.eps;
                   j["v"] = f.params.v;
                 },
                 [&](const family::DvUniform& f) {
                   j["T"] = f.params.T;
                   j["v"] = f.params.v;
                 },
             },
             model.family());
  return j;
}

DensityModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ParameterError("model must be an object with a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  const double center = get_num(j, "center", get_num(j, "mu", 0.0));
  if (kind == "gaussian") return DensityModel(family::Gaussian{get_num(j, "sigma", 1.0)}, center);
  if (kind == "uniform") return DensityModel(family::Uniform{get_num(j, "half_width", 1.0)}, center);
  if (kind == "semicircle") return DensityModel(family::Semicircle{get_num(j, "radius", 1.0)}, center);
  if (kind == "mixture") {
    if (!j.contains("components") || !j.at("components").is_array())
      throw ParameterError("mixture needs a 'components' array");
    std::vector<DensityModel> comps;
    for (const auto& c : j.at("components")) comps.push_back(model_from_json(c));
    std::vector<double> w = j.contains("weights") ? num_list(j, "weights") : std::vector<double>(comps.size(), 1.0);
    return DensityModel(family::Mixture{std::move(w), std::move(comps)}, center);
  }
  if (kind == "unif_gauss_conv")
    return DensityModel(family::UnifGaussConv{get_num(j, "half_width", 1.0), get_num(j, "sigma", 1.0)}, center);
  if (kind == "gaussian_scale_mixture")
    return DensityModel(family::GaussianScaleMixture{num_list(j, "weights"), num_list(j, "sigmas")}, center);
  if (kind == "triangle") return DensityModel(family::Triangle{}, center);
  if (kind == "step") return DensityModel(family::Step{step_params(j)}, center);
  if (kind == "mod_triangle") return DensityModel(family::ModTriangle{need_num(j, "eps")}, center);
  if (kind == "mod_step") return DensityModel(family::ModStep{step_params(j)}, center);
  if (kind == "dv_uniform") {
    DvParams p;
    p.T = static_cast<int>(need_num(j, "T"));
    for (double b : num_list(j, "v")) p.v.push_back(static_cast<int>(b));
    return DensityModel(family::DvUniform{std::move(p)}, center);
  }
  throw ParameterError("unknown model kind '" + kind + "'");
}

DensityModel load_model(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text_or_path);
    if (!in) throw ParameterError("cannot read model file '" + text_or_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("model JSON: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace locest
