#pragma once

#include <string>

#include "potiso/ccc.hpp"
#include "potiso/density.hpp"
#include "potiso/oracle.hpp"
#include "potiso/structure.hpp"

namespace potiso {

// Canonical JSON renderings (sorted keys, two-space indent, trailing
// newline).  Every document carries schema_version; byte-identical output
// for identical inputs is part of the contract, so the CLI, the tests and
// the acceptance suite all route through these.

std::string amenabilityReportJson(const AmenabilityReport& report);
std::string validationReportJson(const ValidationReport& report);
std::string signatureReportJson(const Signature& signature);
std::string amalgamateReportJson(const Condition& result);
std::string antichainReportJson(const AntichainReport& report);
std::string amalgamationAuditJson(const AmalgamationAuditReport& report,
                                  const BoundedUniverse& universe);
std::string extensionAuditJson(const ExtensionAuditReport& report,
                               const BoundedUniverse& universe);
std::string automorphismReportJson(const AutomorphismReport& report);
std::string extendResultJson(const ExtendResult& result);
std::string genericRunJson(const GenericRun& run);

}  // namespace potiso
