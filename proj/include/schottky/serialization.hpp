#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "schottky/asymptotics.hpp"
#include "schottky/group.hpp"
#include "schottky/obstruction.hpp"
#include "schottky/projective.hpp"
#include "schottky/psl.hpp"
#include "schottky/region.hpp"

namespace schottky {

// Complex numbers serialize as [re, im]; vectors as arrays of pairs,
// matrices row-major as arrays of rows. Field order is fixed
// (ordered_json) so equal values dump to identical bytes.
using Json = nlohmann::ordered_json;

Json to_json(const Complex& z);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const ProjPoint& p);        // bare coordinate array
Json to_json(const ProjSubspace& s);     // bare row-major basis matrix
Json to_json(const ProjMap& g);          // {"n":, "lift":}
Json to_json(const QuadricRegion& r);    // {"a":, "b":}
Json to_json(const SchottkyData& s);     // {"n":, "generators":, "regions":}
Json to_json(const ModulusDecomposition& d);
Json to_json(const VerificationReport& r);
Json to_json(const ObstructionReport& r);
Json to_json(const BridgeSet& b);

Complex complex_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
ProjPoint point_from_json(const Json& j);
ProjSubspace subspace_from_json(const Json& j);
ProjMap map_from_json(const Json& j);
QuadricRegion region_from_json(const Json& j);
SchottkyData schottky_from_json(const Json& j);

/// Reads and parses a JSON file; ParseError/IoError on failure.
Json load_json(const std::string& path);

/// Writes atomically: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

struct CsvRow {
    std::vector<std::string> cells;
};

std::string format_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

/// Shortest round-trip decimal formatting for doubles (matches the JSON
/// dump format, so CSV artifacts are byte-stable too).
std::string format_double(double v);

}  // namespace schottky
