#include "util.hpp"

#include <fstream>

namespace entroscope::cli {

CorpusIndex load_filtered_corpus(const CorpusOptions& options) {
    CorpusIndex index =
        load_corpus(options.docs_path, options.entities_path, options.facts_path);
    if (options.min_facts > 1 || options.min_docs > 1)
        index = filter_entities(index, options.min_facts, options.min_docs);
    if (index.fact_tables().empty()) throw EmptyDataError("no entities admitted");
    return index;
}

std::filesystem::path ensure_out_dir(const std::string& out_dir) {
    std::filesystem::path path(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw Error("cannot create output directory " + out_dir + ": " + ec.message());
    return path;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(path + ": invalid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& value) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << value.dump(2) << '\n';
}

namespace {

double require_number(const nlohmann::json& j, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_number())
        throw Error("params: field \"" + field + "\" must be a number");
    return it->get<double>();
}

}  // namespace

GenParams parse_gen_params(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("params file must hold a JSON object");
    GenParams p;
    p.alpha_e = require_number(j, "alpha_e");
    p.delta_e = require_number(j, "delta_e");
    p.alpha_local = require_number(j, "alpha_local");
    p.alpha_global = require_number(j, "alpha_global");
    p.alpha_docs = require_number(j, "alpha_docs");
    p.mu_facts = require_number(j, "mu_facts");
    p.sigma_facts = require_number(j, "sigma_facts");
    p.validate();
    return p;
}

ParamDist parse_param_dist(const nlohmann::json& j, const std::string& field) {
    if (j.is_number()) return ParamDist::constant(j.get<double>());
    if (!j.is_object() || !j.contains("dist"))
        throw Error("population: field \"" + field +
                    "\" must be a number or an object with \"dist\"");
    const std::string kind = j.at("dist").get<std::string>();
    if (kind == "const") return ParamDist::constant(require_number(j, "value"));
    if (kind == "uniform")
        return ParamDist::uniform(require_number(j, "lo"), require_number(j, "hi"));
    if (kind == "lognormal")
        return ParamDist::lognormal(require_number(j, "mu"), require_number(j, "sigma"));
    if (kind == "normal")
        return ParamDist::normal(require_number(j, "mu"), require_number(j, "sigma"));
    throw Error("population: unknown dist \"" + kind + "\" for field \"" + field + "\"");
}

PopulationSpec parse_population_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("population file must hold a JSON object");
    PopulationSpec spec;
    if (!j.contains("n_entities") || !j.at("n_entities").is_number_unsigned())
        throw Error("population: field \"n_entities\" must be a nonnegative integer");
    spec.n_entities = j.at("n_entities").get<std::size_t>();
    spec.alpha_e = parse_param_dist(j.at("alpha_e"), "alpha_e");
    spec.delta_e = parse_param_dist(j.at("delta_e"), "delta_e");
    spec.alpha_local = parse_param_dist(j.at("alpha_local"), "alpha_local");
    spec.alpha_global = parse_param_dist(j.at("alpha_global"), "alpha_global");
    spec.alpha_docs = parse_param_dist(j.at("alpha_docs"), "alpha_docs");
    spec.mu_facts = require_number(j, "mu_facts");
    spec.sigma_facts = require_number(j, "sigma_facts");
    if (!(spec.sigma_facts > 0.0)) throw Error("population: sigma_facts must be > 0");
    return spec;
}

SimMode parse_mode(const std::string& text) {
    if (text == "expectation") return SimMode::expectation;
    if (text == "stochastic") return SimMode::stochastic;
    throw Error("mode must be \"expectation\" or \"stochastic\", got \"" + text + "\"");
}

FeedbackWindow parse_window(const std::string& text) {
    if (text == "day-local") return FeedbackWindow::day_local;
    if (text == "cumulative") return FeedbackWindow::cumulative;
    throw Error("window must be \"day-local\" or \"cumulative\", got \"" + text + "\"");
}

}  // namespace entroscope::cli
