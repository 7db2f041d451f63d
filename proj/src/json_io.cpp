#include "bentlab/json_io.hpp"

namespace bentlab {

using nlohmann::json;

json mat_to_json(const Mat& m) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Mat mat_from_json(const json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (rows < 0 || cols < 0 || entries.size() != std::size_t(rows * cols))
        throw InvalidInput("matrix json: entries.length != rows*cols");
    Mat m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jc = 0; jc < cols; ++jc, ++k)
            m(i, jc) = cplx(entries[k].at(0).get<double>(),
                            entries[k].at(1).get<double>());
    if (!m.allFinite()) throw InvalidInput("matrix json: non-finite entries");
    return m;
}

json state_to_json(const BipartiteState& s) {
    json j = mat_to_json(s.mat());
    j["dA"] = s.dA();
    j["dB"] = s.dB();
    j["normalized"] = s.normalized();
    return j;
}

BipartiteState state_from_json(const json& j) {
    return BipartiteState(mat_from_json(j), j.at("dA").get<int>(),
                          j.at("dB").get<int>(),
                          j.value("normalized", true));
}

json params_to_json(const CanonicalParams& p) {
    return json{{"d", p.d}, {"b", p.b}, {"c", p.c}};
}

CanonicalParams params_from_json(const json& j) {
    return CanonicalParams{j.at("d").get<int>(), j.at("b").get<double>(),
                           j.at("c").get<double>()};
}

json vec_to_json(const Vec& v) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        entries.push_back({v(i).real(), v(i).imag()});
    return entries;
}

Vec vec_from_json(const json& j) {
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(Eigen::Index(i)) = cplx(j[i].at(0).get<double>(), j[i].at(1).get<double>());
    return v;
}

json ensemble_to_json(const ProductEnsemble& e) {
    json members = json::array();
    for (const auto& m : e.members)
        members.push_back({{"w", m.w},
                           {"a", vec_to_json(m.alice)},
                           {"b", vec_to_json(m.bob)}});
    return json{{"members", members}};
}

ProductEnsemble ensemble_from_json(const json& j) {
    ProductEnsemble e;
    for (const auto& m : j.at("members"))
        e.members.push_back({m.at("w").get<double>(), vec_from_json(m.at("a")),
                             vec_from_json(m.at("b"))});
    return e;
}

}  // namespace bentlab
