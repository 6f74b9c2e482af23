#include <cmath>

#include "qrea/classify.hpp"

namespace qrea {

LabelVerdict validate_label(const Shape& S, const CentralCharacter& s, double q0) {
    LabelVerdict v;
    if (static_cast<int>(s.values.size()) != S.n) {
        v.reason = "central character has the wrong length";
        return v;
    }
    if (!S.is_self_adjoint()) {
        v.reason = "shape is not self-adjoint";
        return v;
    }
    auto pattern = shape_sign_pattern(S);
    auto eps = eps_from_prefix(pattern);
    if (!(signature_of_eps(eps) == signature(S))) {
        v.reason = "sign pattern disagrees with the shape signature";
        return v;
    }
    if (!(signature_of_eps(reduce_to_big_cell(S).eps) == signature_of_eps(eps))) {
        v.reason = "big-cell reduction reaches a different signature";
        return v;
    }
    WeightDecoding d;
    try {
        d = weight_from_central(s, pattern, q0);
    } catch (const ClassifyError& e) {
        v.reason = std::string("signature mismatch: ") + e.what();
        return v;
    }
    if (!is_epsilon_adapted(d.weight.eps, d.weight.r, 1e-6)) {
        v.reason = "recovered weight is not eps-adapted";
        v.weight = d.weight;
        return v;
    }
    auto back = central_from_weight(d.weight.eps, d.weight.r, q0);
    for (std::size_t i = 0; i < back.values.size(); ++i)
        if (std::abs(back.values[i] - s.values[i]) > 1e-8 * std::max(1.0, std::abs(s.values[i]))) {
            v.reason = "recovered weight does not reproduce the central character";
            v.weight = d.weight;
            return v;
        }
    v.valid = true;
    v.reason = "ok";
    v.weight = d.weight;
    return v;
}

std::vector<Label> enumerate_labels(int N, int rank, std::size_t limit, double q0, int per_shape) {
    std::vector<Label> out;
    for (const auto& S : enumerate_self_adjoint_shapes(N, rank)) {
        auto pattern = shape_sign_pattern(S);
        auto eps = eps_from_prefix(pattern);
        for (int sample = 0; sample < per_shape; ++sample) {
            if (out.size() >= limit) return out;
            // r_i + i on an integer lattice per sign class, classes offset by non-integers
            std::vector<double> r;
            double pos_next = 0.25 * sample, neg_next = -0.4 - 0.35 * sample;
            for (int i = 1; i <= rank; ++i) {
                double& next = pattern[static_cast<std::size_t>(i - 1)] > 0 ? pos_next : neg_next;
                r.push_back(next - i);
                next += 1.0 + static_cast<double>((i + sample) % 2);
            }
            Label L;
            L.shape = S;
            L.central = central_from_weight(eps, r, q0);
            L.weight = BigCellWeight{eps, r};
            out.push_back(L);
        }
    }
    return out;
}

nlohmann::json label_to_json(const Label& L) {
    nlohmann::json j;
    j["shape"] = shape_to_json(L.shape);
    j["central"] = L.central.values;
    if (L.weight) j["weight"] = {{"eps", L.weight->eps}, {"r", L.weight->r}};
    return j;
}

Label label_from_json(const nlohmann::json& j) {
    try {
        Label L;
        L.shape = shape_from_json(j.at("shape"));
        L.central.values = j.at("central").get<std::vector<double>>();
        if (j.contains("weight")) L.weight = BigCellWeight{j["weight"].at("eps").get<std::vector<int>>(), j["weight"].at("r").get<std::vector<double>>()};
        return L;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed label: ") + e.what());
    }
}

}  // namespace qrea
