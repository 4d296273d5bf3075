#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <ios>
#include <sstream>

#include "dropchain/spectra.hpp"

namespace dropchain::cli
{
namespace
{

using nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &what)
{
    throw ConfigError((path.empty() ? std::string("/") : path) + ": " + what);
}

const json &expect_object(const json &node, const std::string &path,
                          std::initializer_list<std::string_view> allowed)
{
    if (!node.is_object())
        fail(path, "expected an object");
    for (const auto &[key, value] : node.items())
    {
        bool known = false;
        for (auto name : allowed)
            known = known || key == name;
        if (!known)
            fail(path + "/" + key, "unknown key");
    }
    return node;
}

double number_at(const json &obj, const std::string &path, const char *key, std::optional<double> fallback = {})
{
    const std::string here = path + "/" + key;
    if (!obj.contains(key))
    {
        if (fallback)
            return *fallback;
        fail(here, "missing required number");
    }
    const auto &v = obj.at(key);
    if (!v.is_number())
        fail(here, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        fail(here, "expected a finite number");
    return x;
}

long long integer_at(const json &obj, const std::string &path, const char *key)
{
    const std::string here = path + "/" + key;
    if (!obj.contains(key))
        fail(here, "missing required integer");
    const auto &v = obj.at(key);
    if (!v.is_number_integer())
        fail(here, "expected an integer");
    return v.get<long long>();
}

std::optional<std::string> string_at(const json &obj, const std::string &path, const char *key)
{
    if (!obj.contains(key))
        return std::nullopt;
    const auto &v = obj.at(key);
    if (!v.is_string())
        fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

ChainConfig parse_chain(const json &node)
{
    const std::string path = "/chain";
    expect_object(node, path, {"cavities", "a_in"});

    ChainConfig chain;
    if (!node.contains("cavities"))
        fail(path + "/cavities", "missing required array");
    const auto &cavities = node.at("cavities");
    if (!cavities.is_array())
        fail(path + "/cavities", "expected an array");

    for (std::size_t i = 0; i < cavities.size(); ++i)
    {
        const std::string here = path + "/cavities/" + std::to_string(i);
        const auto &c = expect_object(cavities[i], here, {"omega", "kappa0", "kappa1", "kappa2", "phi_next"});
        chain.cavities.push_back({number_at(c, here, "omega"), number_at(c, here, "kappa0"),
                                  number_at(c, here, "kappa1"), number_at(c, here, "kappa2"),
                                  number_at(c, here, "phi_next", 0.0)});
    }

    if (node.contains("a_in"))
    {
        const std::string here = path + "/a_in";
        const auto &a = expect_object(node.at("a_in"), here, {"re", "im"});
        chain.a_in = cplx{number_at(a, here, "re", 0.0), number_at(a, here, "im", 0.0)};
    }
    return chain;
}

UniformShorthand parse_uniform(const json &node)
{
    const std::string path = "/uniform";
    expect_object(node, path, {"n", "kappa0", "kappa1", "kappa2", "delta"});
    UniformShorthand u;
    const long long n = integer_at(node, path, "n");
    if (n < 1 || n > 100000)
        fail(path + "/n", "expected an integer >= 1");
    u.n = static_cast<int>(n);
    u.kappa0 = number_at(node, path, "kappa0");
    u.kappa1 = number_at(node, path, "kappa1");
    u.kappa2 = number_at(node, path, "kappa2");
    u.delta = number_at(node, path, "delta");
    return u;
}

ProbeGrid parse_grid(const json &node)
{
    const std::string path = "/grid";
    expect_object(node, path, {"start", "stop", "points"});
    const double start = number_at(node, path, "start");
    const double stop = number_at(node, path, "stop");
    const long long points = integer_at(node, path, "points");
    if (points < 2)
        fail(path + "/points", "expected an integer >= 2");
    if (!(start < stop))
        fail(path, "start must be below stop");
    return ProbeGrid(start, stop, static_cast<std::size_t>(points));
}

OutputSpec parse_output(const json &node)
{
    const std::string path = "/output";
    expect_object(node, path, {"csv", "svg", "svg_log_y"});
    OutputSpec out;
    out.csv = string_at(node, path, "csv");
    out.svg = string_at(node, path, "svg");
    if (node.contains("svg_log_y"))
    {
        if (!node.at("svg_log_y").is_boolean())
            fail(path + "/svg_log_y", "expected a boolean");
        out.svg_log_y = node.at("svg_log_y").get<bool>();
    }
    return out;
}

}  // namespace

std::optional<Method> parse_method(std::string_view name)
{
    if (name == "solver")
        return Method::general_solver;
    if (name == "closed")
        return Method::closed_form;
    if (name == "decoupled")
        return Method::decoupled;
    return std::nullopt;
}

std::string_view method_flag_name(Method method)
{
    switch (method)
    {
    case Method::general_solver: return "solver";
    case Method::closed_form: return "closed";
    case Method::decoupled: return "decoupled";
    case Method::time_domain: return "time-domain";
    }
    return "unknown";
}

ProbeGrid RunConfig::effective_grid() const
{
    if (grid)
        return *grid;
    if (uniform && uniform->delta > 0.0)
        return default_grid(chain, uniform->delta);
    return default_grid(chain);
}

RunConfig parse_run_config(const json &doc)
{
    expect_object(doc, "", {"chain", "uniform", "grid", "method", "output"});

    const bool has_chain = doc.contains("chain");
    const bool has_uniform = doc.contains("uniform");
    if (has_chain == has_uniform)
        fail("", "exactly one of \"chain\" or \"uniform\" is required");

    RunConfig config;
    if (has_chain)
    {
        config.chain = parse_chain(doc.at("chain"));
    }
    else
    {
        config.uniform = parse_uniform(doc.at("uniform"));
        const auto &u = *config.uniform;
        try
        {
            config.chain = uniform_chain(u.n, u.kappa0, u.kappa1, u.kappa2, u.delta);
        }
        catch (const PreconditionError &e)
        {
            fail("/uniform", e.what());
        }
    }

    const auto validation = validate(config.chain);
    if (!validation.ok())
        fail(has_chain ? "/chain" : "/uniform", validation.summary());

    if (doc.contains("grid"))
        config.grid = parse_grid(doc.at("grid"));

    if (auto name = string_at(doc, "", "method"))
    {
        auto method = parse_method(*name);
        if (!method)
            fail("/method", "expected one of solver, closed, decoupled");
        config.method = *method;
    }

    if (doc.contains("output"))
        config.output = parse_output(doc.at("output"));
    return config;
}

RunConfig parse_run_config_text(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("malformed document: ") + e.what());
    }
    return parse_run_config(doc);
}

RunConfig load_run_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config_text(buffer.str());
}

nlohmann::json to_json(const RunConfig &config)
{
    json doc = json::object();
    if (config.uniform)
    {
        const auto &u = *config.uniform;
        doc["uniform"] = {{"n", u.n}, {"kappa0", u.kappa0}, {"kappa1", u.kappa1}, {"kappa2", u.kappa2},
                          {"delta", u.delta}};
    }
    else
    {
        json cavities = json::array();
        for (const auto &c : config.chain.cavities)
            cavities.push_back({{"omega", c.omega},
                                {"kappa0", c.kappa0},
                                {"kappa1", c.kappa1},
                                {"kappa2", c.kappa2},
                                {"phi_next", c.phi_next}});
        doc["chain"] = {{"cavities", std::move(cavities)},
                        {"a_in", {{"re", config.chain.a_in.real()}, {"im", config.chain.a_in.imag()}}}};
    }
    if (config.grid)
        doc["grid"] = {{"start", config.grid->start()}, {"stop", config.grid->stop()},
                       {"points", config.grid->points()}};
    doc["method"] = std::string(method_flag_name(config.method));

    json output = json::object();
    if (config.output.csv)
        output["csv"] = *config.output.csv;
    if (config.output.svg)
        output["svg"] = *config.output.svg;
    if (config.output.svg_log_y)
        output["svg_log_y"] = true;
    if (!output.empty())
        doc["output"] = std::move(output);
    return doc;
}

}  // namespace dropchain::cli
