#include "flaglab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "flaglab/spectral.hpp"

namespace flaglab {

namespace {

constexpr double kGapBuffer = 1e-7;  // floating-point margin; conservative only

struct LinkCheck {
    bool failed = false;
    LinkFailure failure;
    double gap = std::numeric_limits<double>::quiet_NaN();
    bool has_gap = false;
};

LinkCheck check_one_link(const FlagSkeleton& sk, std::span<const std::int32_t> face, double threshold) {
    LinkCheck out;
    std::vector<int> verts(face.begin(), face.end());
    LinkGraph lk = link_graph(sk, verts);
    if (lk.graph.vertex_count() == 0) return out;  // purity failure covers this

    auto fail = [&](const char* reason) {
        out.failed = true;
        out.failure.face = verts;
        out.failure.reason = reason;
    };
    if (lk.graph.min_degree() == 0) {
        fail("isolated-vertex");
        return out;
    }
    if (!lk.graph.is_connected()) {
        fail("disconnected");
        return out;
    }
    double gap = lambda2(lk.graph);
    out.gap = gap;
    out.has_gap = true;
    if (!(gap > threshold + kGapBuffer)) {
        fail("gap-below-threshold");
        out.failure.lambda2 = gap;
        out.failure.has_lambda2 = true;
    }
    return out;
}

}  // namespace

VanishingCertificate garland_certify(const FlagSkeleton& sk, int D) {
    if (D < 2) throw std::invalid_argument("garland_certify: D must be >= 2");
    if (sk.cap() < D) throw std::invalid_argument("garland_certify: skeleton cap below D");

    VanishingCertificate cert;
    cert.D = D;
    cert.threshold = 1.0 - 1.0 / double(D);
    cert.pure = sk.is_pure(D);

    const std::int64_t count = sk.face_count(D - 2);
    cert.links_checked = count;
    std::vector<LinkCheck> checks(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (count >= 32)
#endif
    for (std::int64_t i = 0; i < count; ++i)
        checks[i] = check_one_link(sk, sk.face(D - 2, i), cert.threshold);

    double min_gap = std::numeric_limits<double>::quiet_NaN();
    for (auto& c : checks) {
        if (c.has_gap) min_gap = std::isnan(min_gap) ? c.gap : std::min(min_gap, c.gap);
        if (c.failed) cert.failures.push_back(std::move(c.failure));
    }
    cert.min_gap = min_gap;
    cert.certified = cert.pure && cert.failures.empty();
    return cert;
}

PropertyTCertificate zuk_certify(const FlagSkeleton& sk) {
    if (sk.cap() < 2) throw std::invalid_argument("zuk_certify: skeleton cap below 2");
    return {garland_certify(sk, 2)};
}

PipelineResult vanishing_pipeline(const Graph& g, int k, bool audit, RankMethod audit_method) {
    if (k < 1) throw std::invalid_argument("vanishing_pipeline: k must be >= 1");
    FlagSkeleton sk = FlagSkeleton::build(g, k + 1);
    PipelineResult out;
    out.certificate = garland_certify(sk, k + 1);
    if (audit) {
        out.audited = true;
        out.betti_value = betti_at(sk, k, audit_method);
    }
    return out;
}

namespace {

nlohmann::json certificate_to_json(const VanishingCertificate& cert, const std::string& verdict) {
    nlohmann::json j;
    j["D"] = cert.D;
    j["pure"] = cert.pure;
    j["threshold"] = cert.threshold;
    if (std::isnan(cert.min_gap)) j["min_gap"] = nullptr;
    else j["min_gap"] = cert.min_gap;
    j["links_checked"] = cert.links_checked;
    j["verdict"] = verdict;
    auto failures = nlohmann::json::array();
    for (const auto& f : cert.failures) {
        nlohmann::json jf;
        jf["face"] = f.face;
        jf["reason"] = f.reason;
        if (f.has_lambda2) jf["lambda2"] = f.lambda2;
        failures.push_back(std::move(jf));
    }
    j["failures"] = std::move(failures);
    return j;
}

}  // namespace

void write_certificate_json(const VanishingCertificate& cert, std::ostream& os) {
    os << certificate_to_json(cert, cert.verdict()).dump(2) << '\n';
}

void write_certificate_json(const PropertyTCertificate& cert, std::ostream& os) {
    os << certificate_to_json(cert.base, cert.verdict()).dump(2) << '\n';
}

}  // namespace flaglab
