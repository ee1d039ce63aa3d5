#pragma once

// JSON forms of schemes, harvests, bounds and certificates. Polynomials and
// rationals are written as text; objects use sorted keys so equal inputs
// give byte-identical output. Certificates carry "cert_version" and "type"
// and read back into the structures that verify() replays.

#include "amc/rankindex.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace amc {

using Json = nlohmann::json;

inline constexpr int cert_version = 1;

Json to_json(const Rat& r);
Json to_json(const Poly& p);
Json to_json(const std::vector<Poly>& ps);
Json to_json(const RatMatrix& m);
Json to_json(const Ring& ring);
Json to_json(const ApolarPair& pair);
Json to_json(const Scheme& s);
Json to_json(const GroebnerBasis& gb);
Json to_json(const SieveHit& hit);
Json to_json(const HarvestItem& item);
Json to_json(const Harvest& h);
Json to_json(const AlgebraicQuadric& q);
Json to_json(const QRCertificate& c);
Json to_json(const ObstructionCertificate& c);
Json to_json(const DeltaBounds& b);
Json to_json(const QRDecision& d);
Json to_json(const RankIndex& r);
Json to_json(const ScanReport& r);

Rat rat_from_json(const Json& j);
Ring ring_from_json(const Json& j);
Poly poly_from_json(const Json& j, const Ring& ring);
RatMatrix matrix_from_json(const Json& j);

/// Throw Error on malformed input, including a wrong version or type.
QRCertificate qr_certificate_from_json(const Json& j);
ObstructionCertificate obstruction_certificate_from_json(const Json& j);

struct VerifyReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;  // JSON pointers of certificates that did not replay
  bool ok() const { return checked > 0 && failures.empty(); }
};

/// Replays every certificate found anywhere inside j. The scheme named by a
/// certificate is rebuilt and must have the same I_2.
VerifyReport verify_json(const Json& j);
/// Replay of a single certificate object.
bool verify_certificate(const Json& j);

}  // namespace amc
