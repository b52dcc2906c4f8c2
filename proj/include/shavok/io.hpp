#pragma once

#include "shavok/embedding.hpp"
#include "shavok/models.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace shavok {

using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "data": [[row 0], [row 1], ...]}
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
/// [{"re": .., "im": ..}, ...]
Json complex_to_json(const ComplexVector& v);
ComplexVector complex_from_json(const Json& j);

Json config_to_json(const FitConfig& cfg);
FitConfig config_from_json(const Json& j);

/// Model file: matrices, singular values, delay-side basis, config echo.
/// The snapshot-side basis V is not stored.
Json model_to_json(const DelayModel& model);
DelayModel model_from_json(const Json& j);

/// `time,value` with a header line. Rows must be uniformly spaced to 1e-9
/// relative jitter; otherwise a data error suggests resampling first.
TimeSeries read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const TimeSeries& x);

Json read_json(const std::filesystem::path& path);

/// Write through a temporary sibling file and rename into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

}  // namespace shavok
