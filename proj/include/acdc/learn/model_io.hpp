#pragma once

#include <json.hpp>

#include "acdc/learn/svm.hpp"

namespace acdc::learn {

// Doubles are written as "%.17g" strings so a load reproduces every bit.
nlohmann::json model_to_json(const ClassifierModel& model);
ClassifierModel model_from_json(const nlohmann::json& j);

std::string encode_double(double v);
double decode_double(const nlohmann::json& j);

} // namespace acdc::learn
