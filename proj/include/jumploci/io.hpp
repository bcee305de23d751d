#pragma once

#include <json.hpp>

#include <string>

#include "jumploci/cga.hpp"
#include "jumploci/complex.hpp"
#include "jumploci/equiv.hpp"
#include "jumploci/fox.hpp"

namespace jumploci {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with a byte offset.
Json parse_json(const std::string& text);
/// Reads and parses a file. The "type" member is required.
Json read_document(const std::string& path);
std::string document_type(const Json& doc);

Json field_to_json(const Field& f);
FieldPtr field_from_json(const Json& j);
Json ring_to_json(const RingPtr& ring);
RingPtr ring_from_json(const Json& j);

std::string format_scalar(const Field& f, const Scalar& s);
Scalar parse_scalar(const FieldPtr& f, const std::string& text);

/// Dense row-major matrix of polynomial strings. An empty array is read as
/// a rows x 0 matrix.
Json matrix_to_json(const PolyMatrix& m);
PolyMatrix matrix_from_json(const Json& j, const RingPtr& ring, std::size_t rows, std::size_t cols);

Json to_json(const FreeChainComplex& e);
Json to_json(const PresentedChainComplex& e);
Json to_json(const GradedAlgebra& a);
Json to_json(const FinAbGroup& g);
Json to_json(const NuData& nu);
Json to_json(const GroupPresentation& p);
Json to_json(const ModulePresentation& p);
Json to_json(const Ideal& i);
Json to_json(const PointSet& s);

FreeChainComplex free_complex_from_json(const Json& j);
/// Accepts both complex document types; free complexes get zero relations.
PresentedChainComplex presented_complex_from_json(const Json& j);
GradedAlgebra cga_from_json(const Json& j);
FinAbGroup group_from_json(const Json& j);
NuData nu_from_json(const Json& j);
GroupPresentation presentation_from_json(const Json& j);
ModulePresentation module_from_json(const Json& j);
Ideal ideal_from_json(const Json& j);
PointSet points_from_json(const Json& j);

/// Coefficients carried into another field (Q -> F_p, or an embedding).
FreeChainComplex change_field(const FreeChainComplex& e, const FieldPtr& field);
PresentedChainComplex change_field(const PresentedChainComplex& e, const FieldPtr& field);
GradedAlgebra change_field(const GradedAlgebra& a, const FieldPtr& field);

}  // namespace jumploci
