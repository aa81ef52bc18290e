#include "acdc/learn/model_io.hpp"

#include <cstdio>
#include <cstdlib>

#include "acdc/error.hpp"

namespace acdc::learn {

std::string encode_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double decode_double(const nlohmann::json& j)
{
    if (!j.is_string())
        throw Error("model: expected a decimal string, got " + j.dump());
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw Error("model: malformed number '" + s + "'");
    return v;
}

namespace {

nlohmann::json encode_vector(const std::vector<double>& v)
{
    auto out = nlohmann::json::array();
    for (double x : v)
        out.push_back(encode_double(x));
    return out;
}

std::vector<double> decode_vector(const nlohmann::json& j)
{
    if (!j.is_array())
        throw Error("model: expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j)
        out.push_back(decode_double(x));
    return out;
}

} // namespace

nlohmann::json model_to_json(const ClassifierModel& model)
{
    nlohmann::json j;
    j["kernel"] = std::string(to_string(model.kernel));
    j["gamma"] = encode_double(model.gamma);
    j["c"] = encode_double(model.c);
    j["seed"] = std::to_string(model.seed);
    j["mean"] = encode_vector(model.mean);
    j["scale"] = encode_vector(model.scale);
    if (model.constant) {
        j["constant"] = *model.constant ? "NEGATE" : "DONT_NEGATE";
        return j;
    }
    j["bias"] = encode_double(model.bias);
    j["coefficients"] = encode_vector(model.coefficients);
    auto svs = nlohmann::json::array();
    for (const auto& sv : model.support_vectors)
        svs.push_back(encode_vector(sv));
    j["support_vectors"] = std::move(svs);
    return j;
}

ClassifierModel model_from_json(const nlohmann::json& j)
{
    try {
        ClassifierModel m;
        const auto kernel = parse_kernel(j.at("kernel").get<std::string>());
        if (!kernel)
            throw Error("model: unknown kernel " + j.at("kernel").dump());
        m.kernel = *kernel;
        m.gamma = decode_double(j.at("gamma"));
        m.c = decode_double(j.at("c"));
        m.seed = std::stoull(j.at("seed").get<std::string>());
        m.mean = decode_vector(j.at("mean"));
        m.scale = decode_vector(j.at("scale"));
        if (m.mean.size() != m.scale.size())
            throw Error("model: mean and scale lengths differ");
        if (j.contains("constant")) {
            const auto c = j.at("constant").get<std::string>();
            if (c != "NEGATE" && c != "DONT_NEGATE")
                throw Error("model: bad constant decision '" + c + "'");
            m.constant = c == "NEGATE";
            return m;
        }
        m.bias = decode_double(j.at("bias"));
        m.coefficients = decode_vector(j.at("coefficients"));
        for (const auto& sv : j.at("support_vectors")) {
            m.support_vectors.push_back(decode_vector(sv));
            if (m.support_vectors.back().size() != m.mean.size())
                throw Error("model: support vector has the wrong dimension");
        }
        if (m.support_vectors.size() != m.coefficients.size())
            throw Error("model: support vector and coefficient counts differ");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("model: ") + e.what());
    } catch (const std::logic_error& e) {
        throw Error(std::string("model: ") + e.what());
    }
}

} // namespace acdc::learn
