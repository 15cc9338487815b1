#include "gradedalg/serialize.hpp"

#include <fstream>
#include <sstream>

namespace gradedalg {

namespace {

std::string coeffKey(const InstanceSpec& spec, int flatIndex, int deg) {
    switch (spec.kind()) {
        case InstanceKind::Matrix: {
            const int d = spec.dim();
            return std::to_string(flatIndex / d) + "," + std::to_string(flatIndex % d);
        }
        case InstanceKind::Germs:
            return std::to_string(flatIndex);
        case InstanceKind::Kondratiev: {
            const auto& gamma = spec.table(deg).at(flatIndex);
            std::string s;
            for (std::size_t k = 0; k < gamma.size(); ++k) {
                if (k) s += ",";
                s += std::to_string(gamma[k]);
            }
            return s;
        }
    }
    return "";
}

int coeffIndexFromKey(const InstanceSpec& spec, const std::string& key, int deg) {
    std::vector<int> parts;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stoi(tok));
    switch (spec.kind()) {
        case InstanceKind::Matrix: {
            if (parts.size() != 2) throw precondition_error("bad matrix coefficient key " + key);
            const int d = spec.dim();
            if (parts[0] < 0 || parts[0] >= d || parts[1] < 0 || parts[1] >= d)
                throw precondition_error("matrix coefficient key out of range: " + key);
            return parts[0] * d + parts[1];
        }
        case InstanceKind::Germs: {
            if (parts.size() != 1 || parts[0] < 0 || parts[0] > deg)
                throw precondition_error("bad germs coefficient key " + key);
            return parts[0];
        }
        case InstanceKind::Kondratiev: {
            if (static_cast<int>(parts.size()) != spec.vars())
                throw precondition_error("bad kondratiev coefficient key " + key);
            const int rank = spec.table(deg).rank(parts);
            if (rank < 0) throw precondition_error("kondratiev key out of range: " + key);
            return rank;
        }
    }
    throw precondition_error("bad coefficient key " + key);
}

Json complexToJson(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complexFromJson(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw precondition_error("coefficient values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json tailToJson(const std::map<Rational, double>& tails) {
    Json j = Json::object();
    for (const auto& [g, v] : tails) j[gradeKey(g)] = v;
    return j;
}

}  // namespace

std::string gradeKey(const Rational& g) { return g.str(); }

Json instanceToJson(const InstanceSpec& spec) {
    Json j;
    j["instance"] = kindName(spec.kind());
    Json params = Json::object();
    switch (spec.kind()) {
        case InstanceKind::Matrix:
            params["n"] = spec.dim();
            break;
        case InstanceKind::Germs: {
            params["degree"] = spec.degree();
            Json grades = Json::array();
            for (const auto& g : spec.grades()) grades.push_back(g.str());
            params["grades"] = grades;
            break;
        }
        case InstanceKind::Kondratiev:
            params["vars"] = spec.vars();
            params["degree"] = spec.degree();
            params["max_grade"] = spec.grades().back().str();
            break;
    }
    j["params"] = params;
    return j;
}

InstanceSpec instanceFromJson(const Json& j) {
    if (!j.contains("instance") || !j.contains("params"))
        throw precondition_error("instance JSON requires 'instance' and 'params'");
    const InstanceKind kind = kindFromName(j["instance"].get<std::string>());
    const Json& p = j["params"];
    switch (kind) {
        case InstanceKind::Matrix:
            return InstanceSpec::matrix(p.at("n").get<int>());
        case InstanceKind::Germs: {
            std::vector<Rational> radii;
            if (p.contains("grades"))
                for (const auto& g : p.at("grades"))
                    radii.push_back(Rational::parse(g.get<std::string>()));
            else
                radii = InstanceSpec::defaultRadii();
            return InstanceSpec::germs(p.at("degree").get<int>(), std::move(radii));
        }
        case InstanceKind::Kondratiev: {
            const int maxGrade =
                p.contains("max_grade")
                    ? static_cast<int>(Rational::parse(p.at("max_grade").get<std::string>()).num())
                    : 6;
            return InstanceSpec::kondratiev(p.at("vars").get<int>(), p.at("degree").get<int>(),
                                            maxGrade);
        }
    }
    throw precondition_error("unknown instance kind");
}

Json elementToJson(const AlgebraElement& e) {
    Json j = instanceToJson(e.spec());
    Json coeffs = Json::object();
    for (int i = 0; i < e.coeffCount(); ++i)
        if (e.coeff(i) != Complex{})
            coeffs[coeffKey(e.spec(), i, e.truncationDegree())] = complexToJson(e.coeff(i));
    j["coefficients"] = coeffs;
    j["tail_bounds"] = tailToJson(e.tailBounds());
    return j;
}

AlgebraElement elementFromJson(const Json& j) {
    const InstanceSpec spec = instanceFromJson(j);
    AlgebraElement e = AlgebraElement::zero(spec);
    if (j.contains("coefficients"))
        for (const auto& [key, val] : j["coefficients"].items())
            e.coeffRef(coeffIndexFromKey(spec, key, spec.degree())) = complexFromJson(val);
    if (j.contains("tail_bounds"))
        for (const auto& [key, val] : j["tail_bounds"].items())
            e.setTailBound(Rational::parse(key), val.get<double>());
    return e;
}

Json wienerToJson(const WienerElement& w) {
    Json j = instanceToJson(w.spec());
    j["type"] = "wiener";
    j["half_width"] = w.halfWidth();
    Json coeffs = Json::object();
    for (int n = -w.halfWidth(); n <= w.halfWidth(); ++n) {
        const auto blk = w.block(n);
        Json inner = Json::object();
        for (int i = 0; i < w.stride(); ++i)
            if (blk[i] != Complex{})
                inner[coeffKey(w.spec(), i, w.coeffDeg())] = complexToJson(blk[i]);
        if (!inner.empty()) coeffs[std::to_string(n)] = inner;
    }
    j["coefficients"] = coeffs;
    j["tail_bounds"] = tailToJson(w.tailBounds());
    return j;
}

WienerElement wienerFromJson(const Json& j) {
    const InstanceSpec spec = instanceFromJson(j);
    if (!j.contains("half_width")) throw precondition_error("wiener JSON requires 'half_width'");
    WienerElement w = WienerElement::zero(spec, j["half_width"].get<int>());
    if (j.contains("coefficients"))
        for (const auto& [nKey, inner] : j["coefficients"].items()) {
            const int n = std::stoi(nKey);
            if (std::abs(n) > w.halfWidth())
                throw precondition_error("wiener coefficient index outside half_width");
            auto blk = w.blockRef(n);
            for (const auto& [key, val] : inner.items())
                blk[coeffIndexFromKey(spec, key, w.coeffDeg())] = complexFromJson(val);
        }
    if (j.contains("tail_bounds"))
        for (const auto& [key, val] : j["tail_bounds"].items())
            w.setTailBound(Rational::parse(key), val.get<double>());
    return w;
}

Json certificateToJson(const NormCertificate& c) {
    Json j;
    j["grade"] = gradeKey(c.grade);
    j["bound"] = c.bound;
    j["formula"] = formulaTag(c.formula);
    j["alpha"] = gradeKey(c.alpha);
    j["beta"] = gradeKey(c.beta);
    j["constants"] = c.constants;
    return j;
}

Json validationReportToJson(const ValidationReport& r) {
    Json j;
    j["instance"] = kindName(r.kind);
    j["alpha"] = gradeKey(r.alpha);
    j["beta"] = gradeKey(r.beta);
    j["constant"] = r.constant;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["worst_ratio"] = r.worstRatio;
    j["worst_sample"] = r.worstSample;
    j["slack"] = r.slack;
    j["pass"] = r.pass;
    return j;
}

Json scanReportToJson(const ScanReport& r) {
    Json j;
    j["grid_size"] = r.gridSize;
    j["all_invertible"] = r.allInvertible;
    j["min_margin"] = r.minMargin;
    j["singular_count"] = r.singularCount;
    Json pts = Json::array();
    for (const auto& p : r.points) {
        Json pj;
        pj["t"] = p.t;
        pj["status"] = p.status == PointInvertibility::Invertible
                           ? "invertible"
                           : (p.status == PointInvertibility::Singular ? "singular" : "unknown");
        pj["margin"] = p.margin;
        pj["grade"] = gradeKey(p.grade);
        pts.push_back(pj);
    }
    j["points"] = pts;
    return j;
}

Json membershipToJson(const MembershipReport& m) {
    Json j;
    j["plus_factor_violation"] = m.plusFactorViolation;
    j["plus_inverse_violation"] = m.plusInverseViolation;
    j["minus_factor_violation"] = m.minusFactorViolation;
    j["minus_inverse_violation"] = m.minusInverseViolation;
    j["pass"] = m.pass;
    return j;
}

Json factorizationResultToJson(const FactorizationResult& r) {
    Json j;
    j["alpha"] = gradeKey(r.alpha);
    j["beta"] = gradeKey(r.beta);
    j["contraction"] = r.contraction;
    j["residual_minus_plus"] = r.residualMinusPlus;
    j["residual_plus_minus"] = r.residualPlusMinus;
    j["inner_inversion"] = r.innerInversionMethod;
    j["membership"] = membershipToJson(r.membership);
    j["a_minus"] = wienerToJson(r.aMinus);
    j["a_plus"] = wienerToJson(r.aPlus);
    j["a_minus_inv"] = wienerToJson(r.aMinusInv);
    j["a_plus_inv"] = wienerToJson(r.aPlusInv);
    auto logJson = [](const std::vector<IterationLogEntry>& log) {
        Json out = Json::array();
        for (const auto& e : log) out.push_back(Json::array({e.iteration, e.incrementNorm}));
        return out;
    };
    j["iteration_log_x"] = logJson(r.logX);
    j["iteration_log_y"] = logJson(r.logY);
    return j;
}

Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

void writeJsonFile(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

std::string fileHash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace gradedalg
