#include "schottky/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "schottky/errors.hpp"

namespace schottky {

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
    return arr;
}

Json to_json(const Matrix& m) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        arr.push_back(std::move(row));
    }
    return arr;
}

Json to_json(const ProjPoint& p) { return to_json(p.coords()); }

Json to_json(const ProjSubspace& s) { return to_json(s.basis()); }

Json to_json(const ProjMap& g) {
    Json j;
    j["n"] = g.ambient_dim();
    j["lift"] = to_json(g.lift());
    return j;
}

Json to_json(const QuadricRegion& r) {
    Json j;
    j["a"] = to_json(r.form_a());
    j["b"] = to_json(r.form_b());
    return j;
}

Json to_json(const SchottkyData& s) {
    Json j;
    j["n"] = s.n;
    Json gens = Json::array();
    for (const auto& g : s.generators) gens.push_back(to_json(g));
    j["generators"] = std::move(gens);
    Json regions = Json::array();
    for (const auto& [r, sr] : s.regions) {
        Json pair;
        pair["R"] = to_json(r);
        pair["S"] = to_json(sr);
        regions.push_back(std::move(pair));
    }
    j["regions"] = std::move(regions);
    return j;
}

Json to_json(const ModulusDecomposition& d) {
    Json j;
    j["n"] = d.ambient_dim;
    Json parts = Json::array();
    for (const auto& p : d.parts) {
        Json pj;
        pj["modulus"] = p.modulus;
        pj["dim"] = static_cast<int>(p.basis.cols());
        pj["basis"] = to_json(p.basis);
        pj["gamma"] = to_json(p.gamma);
        parts.push_back(std::move(pj));
    }
    j["parts"] = std::move(parts);
    return j;
}

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        default: return "UNKNOWN";
    }
}

}  // namespace

Json to_json(const VerificationReport& r) {
    Json j;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["status"] = status_name(c.status);
        cj["detail"] = c.detail;
        if (c.certificate_mu) cj["mu"] = *c.certificate_mu;
        if (c.certificate_margin) cj["margin"] = *c.certificate_margin;
        if (c.witness) cj["witness"] = to_json(*c.witness);
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["all_passed"] = r.all_passed();
    j["notes"] = r.notes;
    return j;
}

Json to_json(const BridgeSet& b) {
    Json j;
    j["j0"] = b.j0;
    switch (b.kind) {
        case BridgeCase::LowPivot: j["case"] = "low-pivot"; break;
        case BridgeCase::MidPivot: j["case"] = "mid-pivot"; break;
        case BridgeCase::HighPivot: j["case"] = "high-pivot"; break;
        case BridgeCase::Degenerate: j["case"] = "degenerate-single-class"; break;
    }
    Json comps = Json::array();
    for (const auto& c : b.components) {
        Json cj;
        cj["label"] = c.label;
        cj["proj_dim"] = c.span.proj_dim();
        cj["span"] = to_json(c.span);
        if (c.attachment) cj["attachment"] = to_json(*c.attachment);
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    Json levels = Json::array();
    for (const auto& l : b.level_sets) levels.push_back(to_json(l));
    j["level_sets"] = std::move(levels);
    if (b.forward_connector) {
        j["forward_connector"] = to_json(*b.forward_connector);
        j["forward_residual"] = b.forward_residual;
    }
    if (b.backward_connector) {
        j["backward_connector"] = to_json(*b.backward_connector);
        j["backward_residual"] = b.backward_residual;
    }
    Json ws = Json::array();
    for (const auto& w : b.witnesses) {
        Json wj;
        wj["component"] = w.component;
        wj["m"] = w.m;
        wj["direction"] = w.direction;
        wj["distance"] = w.distance;
        wj["point"] = to_json(w.point);
        wj["start"] = to_json(w.start);
        ws.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(ws);
    j["hypothesis_verified"] = b.hypothesis_verified;
    return j;
}

Json to_json(const ObstructionReport& r) {
    Json j;
    j["ambient"] = r.ambient;
    j["applicable"] = r.applicable;
    j["verification"] = to_json(r.verification);
    Json gens = Json::array();
    for (const auto& g : r.generators) {
        Json gj;
        gj["gen"] = g.gen;
        gj["bridge_built"] = g.bridge_built;
        if (!g.bridge_built) {
            gj["bridge_error"] = g.bridge_error;
        } else {
            gj["bridge"] = to_json(g.bridge);
            auto hits = [](const std::vector<ChainHit>& v) {
                Json arr = Json::array();
                for (const auto& h : v) {
                    Json hj;
                    hj["component"] = h.component;
                    hj["value"] = h.value;
                    hj["point"] = to_json(h.point);
                    arr.push_back(std::move(hj));
                }
                return arr;
            };
            gj["in_r_chain"] = hits(g.in_r_chain);
            gj["in_s_chain"] = hits(g.in_s_chain);
            gj["in_neither"] = hits(g.in_neither);
            gj["conclusion"] = g.conclusion;
        }
        gens.push_back(std::move(gj));
    }
    j["generators"] = std::move(gens);
    {
        Json ej;
        const char* name = "not-applicable";
        switch (r.exclusion.outcome) {
            case ExclusionVerdict::Outcome::ContradictionWitness: name = "contradiction-witness"; break;
            case ExclusionVerdict::Outcome::NoCandidateFound: name = "no-candidate-found"; break;
            case ExclusionVerdict::Outcome::NoForcedIntersection: name = "no-forced-intersection"; break;
            case ExclusionVerdict::Outcome::NotApplicable: name = "not-applicable"; break;
        }
        ej["outcome"] = name;
        ej["detail"] = r.exclusion.detail;
        if (r.exclusion.witness) {
            ej["witness"] = to_json(*r.exclusion.witness);
            ej["s_region_value"] = r.exclusion.s_region_value;
            ej["r_region_value"] = r.exclusion.r_region_value;
            ej["candidate_gen"] = r.exclusion.candidate_gen;
            ej["other_gen"] = r.exclusion.other_gen;
        }
        j["exclusion"] = std::move(ej);
    }
    j["verdict"] = r.verdict;
    j["witness_count"] = r.witness_count;
    return j;
}

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex number must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Vector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("vector must be a nonempty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const size_t rows = j.size();
    const size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError("matrix rows must be nonempty arrays");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix rows");
        for (size_t k = 0; k < cols; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k]);
    }
    return m;
}

ProjPoint point_from_json(const Json& j) { return ProjPoint::from_canonical(vector_from_json(j)); }

ProjSubspace subspace_from_json(const Json& j) { return ProjSubspace::from_orthonormal(matrix_from_json(j)); }

ProjMap map_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("lift")) throw ParseError("map must have fields n, lift");
    const Matrix lift = matrix_from_json(j["lift"]);
    if (lift.rows() != j["n"].get<int>() + 1) throw ParseError("lift size does not match n");
    return ProjMap::from_lift(lift);
}

QuadricRegion region_from_json(const Json& j) {
    if (!j.contains("a") || !j.contains("b")) throw ParseError("region must have fields a, b");
    return QuadricRegion::from_forms(matrix_from_json(j["a"]), matrix_from_json(j["b"]));
}

SchottkyData schottky_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("generators") || !j.contains("regions"))
        throw ParseError("schottky data must have fields n, generators, regions");
    SchottkyData s;
    s.n = j["n"].get<int>();
    for (const auto& gj : j["generators"]) s.generators.push_back(map_from_json(gj));
    for (const auto& rj : j["regions"]) {
        if (!rj.contains("R") || !rj.contains("S")) throw ParseError("region pair must have fields R, S");
        s.regions.emplace_back(region_from_json(rj["R"]), region_from_json(rj["S"]));
    }
    if (s.generators.size() != s.regions.size())
        throw ParseError("generator and region counts differ");
    for (const auto& g : s.generators)
        if (g.ambient_dim() != s.n) throw ParseError("generator dimension does not match n");
    return s;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    const fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        if (!out.good()) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("rename to " + path + " failed: " + ec.message());
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.cells.size(); ++i) {
            if (i) out += ',';
            out += row.cells[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace schottky
