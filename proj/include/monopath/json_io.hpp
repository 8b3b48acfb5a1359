#pragma once

// JSON/CSV forms of partitions, certificates, solve results and sweep
// summaries.  nlohmann::json keeps object keys sorted, so identical inputs
// serialize to identical bytes; nothing here depends on time or addresses.

#include <sstream>
#include <string>

#include <json.hpp>

#include "monopath/solver.hpp"
#include "monopath/sweep.hpp"
#include "monopath/verify.hpp"
#include "monopath/version.hpp"

namespace monopath {

inline nlohmann::json to_json(const PathSeq& p) {
    nlohmann::json j;
    if (p.colour) j["colour"] = *p.colour;
    j["vertices"] = p.vertices;
    return j;
}

inline PathSeq path_from_json(const nlohmann::json& j) {
    PathSeq p;
    for (const auto& v : j.at("vertices")) p.vertices.push_back(v.get<Vertex>());
    if (j.contains("colour") && !j["colour"].is_null()) p.colour = j["colour"].get<Colour>();
    return p;
}

inline nlohmann::json to_json(const PathPartition& part) {
    nlohmann::json j;
    j["mode"] = to_string(part.mode);
    j["cover"] = part.cover;
    j["paths"] = nlohmann::json::array();
    for (const auto& p : part.paths) j["paths"].push_back(to_json(p));
    return j;
}

inline PathPartition partition_from_json(const nlohmann::json& j) {
    PathPartition part;
    auto mode = partition_mode_from(j.at("mode").get<std::string>());
    if (!mode) throw std::invalid_argument("bad partition mode");
    part.mode = *mode;
    for (const auto& v : j.at("cover")) part.cover.push_back(v.get<Vertex>());
    for (const auto& p : j.at("paths")) part.paths.push_back(path_from_json(p));
    return part;
}

inline nlohmann::json to_json(const CertificateParams& p) {
    nlohmann::json j;
    j["colouring"] = p.colouring;
    j["construction"] = p.construction;
    j["horizon"] = p.horizon;
    j["oracle"] = p.oracle;
    j["seed"] = p.seed;
    j["steps"] = p.steps;
    j["unverified_steps"] = p.unverified_steps;
    j["witness_count"] = p.witness_count;
    return j;
}

inline CertificateParams certificate_params_from_json(const nlohmann::json& j) {
    CertificateParams p;
    p.colouring = j.value("colouring", "");
    p.construction = j.value("construction", "");
    p.horizon = j.value("horizon", std::uint64_t(0));
    p.oracle = j.value("oracle", "");
    p.seed = j.value("seed", std::uint64_t(0));
    p.steps = j.value("steps", std::uint64_t(0));
    p.witness_count = j.value("witness_count", 8);
    if (j.contains("unverified_steps"))
        for (const auto& v : j["unverified_steps"]) p.unverified_steps.push_back(v.get<std::uint64_t>());
    return p;
}

inline nlohmann::json to_json(const PrefixCertificate& cert) {
    nlohmann::json j;
    j["step"] = cert.step_count;
    j["coverage_bound"] = cert.coverage_bound;
    j["paths"] = nlohmann::json::array();
    for (const auto& s : cert.streams) j["paths"].push_back(to_json(s));
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : cert.witnesses) {
        if (w)
            j["witnesses"].push_back(*w);
        else
            j["witnesses"].push_back(nullptr);
    }
    j["params"] = to_json(cert.params);
    return j;
}

inline PrefixCertificate certificate_from_json(const nlohmann::json& j) {
    PrefixCertificate cert;
    cert.step_count = j.at("step").get<std::uint64_t>();
    cert.coverage_bound = j.at("coverage_bound").get<std::uint64_t>();
    for (const auto& p : j.at("paths")) cert.streams.push_back(path_from_json(p));
    for (const auto& w : j.at("witnesses")) {
        if (w.is_null())
            cert.witnesses.push_back(std::nullopt);
        else
            cert.witnesses.push_back(w.get<Vertex>());
    }
    if (j.contains("params")) cert.params = certificate_params_from_json(j["params"]);
    return cert;
}

inline nlohmann::json to_json(const SolveResult& res) {
    nlohmann::json j;
    j["mode"] = to_string(res.mode);
    j["feasible"] = res.feasible;
    if (res.feasible) {
        j["optimum"] = res.optimum;
        j["witness"] = to_json(res.witness);
    }
    j["nodes_explored"] = res.nodes_explored;
    return j;
}

inline nlohmann::json to_json(const Report& rep) {
    nlohmann::json j;
    switch (rep.status) {
        case VerifyStatus::ok: j["status"] = "ok"; break;
        case VerifyStatus::violation: j["status"] = "violation"; break;
        case VerifyStatus::unverifiable: j["status"] = "unverifiable"; break;
    }
    j["issues"] = rep.issues;
    return j;
}

inline nlohmann::json sweep_to_json(const SweepSummary& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["r"] = s.r;
    j["mode"] = to_string(s.mode);
    j["canonical"] = s.canonical;
    j["total"] = s.total;
    j["infeasible"] = s.infeasible;
    j["max_optimum"] = s.max_optimum;
    j["argmax_index"] = s.argmax_index;
    nlohmann::json hist = nlohmann::json::object();
    for (auto& [k, v] : s.histogram) hist[std::to_string(k)] = v;
    j["histogram"] = hist;
    if (s.canonical) {
        nlohmann::json wt = nlohmann::json::object();
        for (auto& [k, v] : s.weighted) wt[std::to_string(k)] = v;
        j["weighted_histogram"] = wt;
    }
    return j;
}

inline std::string sweep_to_csv(const SweepSummary& s, int jobs) {
    std::ostringstream os;
    os << "# monopath sweep v" << kVersion << "\n";
    os << "# n=" << s.n << " r=" << s.r << " mode=" << to_string(s.mode)
       << " canonical=" << (s.canonical ? 1 : 0) << " jobs=" << jobs << "\n";
    if (s.canonical) {
        os << "optimum,count,orbit_weighted\n";
        for (auto& [k, v] : s.histogram) {
            auto it = s.weighted.find(k);
            os << k << "," << v << "," << (it == s.weighted.end() ? 0 : it->second) << "\n";
        }
    } else {
        os << "optimum,count\n";
        for (auto& [k, v] : s.histogram) os << k << "," << v << "\n";
    }
    os << "# total=" << s.total << " infeasible=" << s.infeasible
       << " max_optimum=" << s.max_optimum << " argmax_index=" << s.argmax_index << "\n";
    return os.str();
}

} // namespace monopath
