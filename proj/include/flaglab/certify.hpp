#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "flaglab/complex.hpp"
#include "flaglab/homology.hpp"

namespace flaglab {

// One link that blocked certification. lambda2 is present only when the gap
// was actually computable (connected link, no isolated vertices).
struct LinkFailure {
    std::vector<int> face;
    std::string reason;  // "isolated-vertex" | "disconnected" | "gap-below-threshold"
    double lambda2 = std::numeric_limits<double>::quiet_NaN();
    bool has_lambda2 = false;
};

// Outcome of the spectral vanishing criterion at dimension D: if the
// D-skeleton is pure and every link of a (D-2)-face is connected with
// normalized-Laplacian gap above 1 - 1/D, then the (D-1)-st rational
// cohomology vanishes. The criterion is sound but not complete.
struct VanishingCertificate {
    int D = 0;
    bool pure = false;
    std::int64_t links_checked = 0;
    double threshold = 0.0;  // 1 - 1/D
    double min_gap = std::numeric_limits<double>::quiet_NaN();  // over computable links
    bool certified = false;
    std::vector<LinkFailure> failures;  // in face order

    std::string verdict() const { return certified ? "certified" : "not-certified"; }
};

// Same check at D = 2 (vertex links, threshold 1/2), read as a property (T)
// certificate for the fundamental group.
struct PropertyTCertificate {
    VanishingCertificate base;
    std::string verdict() const { return base.certified ? "has-T-certified" : "not-certified"; }
};

// Requires D >= 2 and sk.cap() >= D. Purity is judged within the
// D-skeleton; a (D-2)-face with an empty link already fails purity, so empty
// links are not separately reported. Gaps within 1e-7 of the threshold are
// treated as not above it, which only ever withholds a certificate.
VanishingCertificate garland_certify(const FlagSkeleton& sk, int D);

// Requires sk.cap() >= 2.
PropertyTCertificate zuk_certify(const FlagSkeleton& sk);

struct PipelineResult {
    VanishingCertificate certificate;
    bool audited = false;
    std::int64_t betti_value = -1;  // beta_{D-1} when audited
};

// Builds the (k+1)-skeleton of g and runs the vanishing criterion at
// D = k+1; optionally audits beta_k through the homology ranks.
PipelineResult vanishing_pipeline(const Graph& g, int k, bool audit = false,
                                  RankMethod audit_method = RankMethod::ExactRational);

void write_certificate_json(const VanishingCertificate& cert, std::ostream& os);
void write_certificate_json(const PropertyTCertificate& cert, std::ostream& os);

}  // namespace flaglab
