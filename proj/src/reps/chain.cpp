#include "qrea/reps.hpp"

namespace qrea {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string(where) + " needs \"" + key + "\"");
    return j.at(key);
}

std::vector<int> int_list(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    return j.get<std::vector<int>>();
}

std::vector<double> real_list(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    return j.get<std::vector<double>>();
}

}  // namespace

OperatorGrid build_from_spec(const nlohmann::json& spec) {
    try {
        const double q0 = spec.value("q", 0.5);
        const auto& base = field(spec, "base", "chain spec");
        OperatorGrid cur;
        if (base.contains("character")) {
            const auto& c = base.at("character");
            CharacterParams p;
            p.n = field(c, "N", "character").get<int>();
            p.k = c.value("k", 0);
            p.l = c.value("l", 0);
            p.a = c.value("a", 1.0);
            p.c = c.value("c", 1.0);
            if (c.contains("y")) p.y_theta = real_list(c.at("y"), "character y");
            else p.y_theta.assign(static_cast<std::size_t>(p.l), 0.0);
            cur = character_rep(p, q0);
        } else if (base.contains("verma")) {
            const auto& v = base.at("verma");
            cur = verma_big_cell(int_list(field(v, "eps", "verma"), "verma eps"), real_list(field(v, "r", "verma"), "verma r"),
                                 field(v, "cutoff", "verma").get<int>(), q0);
        } else {
            throw std::invalid_argument("base must be a character or a verma module");
        }
        if (!spec.contains("chain")) return cur;
        const auto& chain = spec.at("chain");
        if (!chain.is_array()) throw std::invalid_argument("chain must be an array");
        for (const auto& step : chain) {
            if (step.contains("alpha")) {
                const int i = step.at("alpha").get<int>();
                const int d = step.value("d", 16);
                cur = step.value("trivial", false) ? apply_alpha_trivial(cur, i) : apply_alpha(cur, i, d);
            } else if (step.contains("verma")) {
                const auto& v = step.at("verma");
                VermaModule V = verma_module(int_list(field(v, "eps", "verma step"), "verma eps"),
                                             real_list(field(v, "r", "verma step"), "verma r"),
                                             field(v, "cutoff", "verma step").get<int>(), q0);
                if (V.min_gram_ratio < -1e-10) throw UnitarityError("Gram form not positive: " + V.gram_witness);
                cur = apply_t_coaction(cur, V);
            } else {
                throw std::invalid_argument("chain step must be \"alpha\" or \"verma\"");
            }
        }
        return cur;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed chain spec: ") + e.what());
    }
}

}  // namespace qrea
