#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "netplan/errors.hpp"

namespace netplan {

enum class UtmHemisphere { North, South };

inline char hemisphere_letter(UtmHemisphere h) {
  return h == UtmHemisphere::North ? 'N' : 'S';
}

/// Reference ellipsoid, defaulting to WGS84 (the GPS datum).
struct EllipsoidParams {
  double semi_major_axis_m = 6378137.0;
  double inverse_flattening = 298.257223563;

  static constexpr EllipsoidParams wgs84() { return {6378137.0, 298.257223563}; }
};

/// An angle in hemisphere-prefixed degrees:minutes:seconds notation,
/// e.g. "N36:11:38.90".
struct DmsAngle {
  char hemisphere = 'N';  // 'N', 'S', 'E' or 'W'
  int degrees = 0;
  int minutes = 0;
  double seconds = 0.0;

  static DmsAngle parse(std::string_view text);

  double decimal_degrees() const {
    const double magnitude = degrees + minutes / 60.0 + seconds / 3600.0;
    return (hemisphere == 'S' || hemisphere == 'W') ? -magnitude : magnitude;
  }

  /// Emits the textual shape the node datasets use: H + zero-padded
  /// degrees/minutes + seconds with two decimals. Carries over when the
  /// seconds round up to 60.00.
  std::string format() const {
    double sec = std::round(seconds * 100.0) / 100.0;
    int deg = degrees;
    int min = minutes;
    if (sec >= 60.0) {
      sec -= 60.0;
      if (++min == 60) {
        min = 0;
        ++deg;
      }
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%c%02d:%02d:%05.2f", hemisphere, deg, min, sec);
    return buf;
  }
};

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return c >= '0' && c <= '9'; });
}

inline int parse_int_component(std::string_view text, std::string_view part,
                               const char* component) {
  if (!all_digits(part)) {
    throw ParseError("bad " + std::string(component) + " in DMS angle \"" +
                     std::string(text) + "\"");
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
  if (ec != std::errc{} || ptr != part.data() + part.size()) {
    throw ParseError("bad " + std::string(component) + " in DMS angle \"" +
                     std::string(text) + "\"");
  }
  return value;
}

inline double parse_seconds_component(std::string_view text, std::string_view part) {
  const auto dot = part.find('.');
  const bool shape_ok =
      dot == std::string_view::npos
          ? all_digits(part)
          : all_digits(part.substr(0, dot)) && all_digits(part.substr(dot + 1));
  if (!shape_ok) {
    throw ParseError("bad seconds in DMS angle \"" + std::string(text) + "\"");
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
  if (ec != std::errc{} || ptr != part.data() + part.size()) {
    throw ParseError("bad seconds in DMS angle \"" + std::string(text) + "\"");
  }
  return value;
}

}  // namespace detail

inline DmsAngle DmsAngle::parse(std::string_view text) {
  if (text.empty()) {
    throw ParseError("empty DMS angle");
  }
  const char h = text.front();
  if (h != 'N' && h != 'S' && h != 'E' && h != 'W') {
    throw ParseError("bad hemisphere in DMS angle \"" + std::string(text) +
                     "\" (expected N, S, E or W prefix)");
  }
  const std::string_view rest = text.substr(1);
  const auto colon1 = rest.find(':');
  const auto colon2 = colon1 == std::string_view::npos ? colon1 : rest.find(':', colon1 + 1);
  if (colon1 == std::string_view::npos || colon2 == std::string_view::npos ||
      rest.find(':', colon2 + 1) != std::string_view::npos) {
    throw ParseError("DMS angle \"" + std::string(text) +
                     "\" does not match <H><DD>:<MM>:<SS.ss>");
  }

  DmsAngle angle;
  angle.hemisphere = h;
  angle.degrees = detail::parse_int_component(text, rest.substr(0, colon1), "degrees");
  angle.minutes =
      detail::parse_int_component(text, rest.substr(colon1 + 1, colon2 - colon1 - 1), "minutes");
  angle.seconds = detail::parse_seconds_component(text, rest.substr(colon2 + 1));

  const int degree_limit = (h == 'N' || h == 'S') ? 90 : 180;
  if (angle.degrees > degree_limit) {
    throw RangeError("degrees " + std::to_string(angle.degrees) + " out of range in \"" +
                     std::string(text) + "\" (limit " + std::to_string(degree_limit) + ")");
  }
  if (angle.minutes >= 60) {
    throw RangeError("minutes " + std::to_string(angle.minutes) + " out of range in \"" +
                     std::string(text) + "\" (must be < 60)");
  }
  if (!(angle.seconds >= 0.0) || angle.seconds >= 60.0) {
    throw RangeError("seconds out of range in \"" + std::string(text) + "\" (must be < 60)");
  }
  return angle;
}

/// Parses a DMS string straight to signed decimal degrees.
inline double parse_dms(std::string_view text) { return DmsAngle::parse(text).decimal_degrees(); }

/// WGS84 position in signed decimal degrees.
struct GeoCoordinate {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;

  GeoCoordinate(double latitude, double longitude)
      : latitude_deg(latitude), longitude_deg(longitude) {
    if (!(latitude >= -90.0 && latitude <= 90.0)) {
      throw RangeError("latitude " + std::to_string(latitude) + " outside [-90, 90]");
    }
    if (!(longitude > -180.0 && longitude <= 180.0)) {
      throw RangeError("longitude " + std::to_string(longitude) + " outside (-180, 180]");
    }
  }
};

/// Projected position within one UTM zone, in meters.
struct UtmCoordinate {
  int zone = 0;
  UtmHemisphere hemisphere = UtmHemisphere::North;
  double easting_m = 0.0;
  double northing_m = 0.0;
};

/// Natural UTM zone for a longitude; the antimeridian edge clamps into zone 60.
inline int utm_zone_for(double longitude_deg) {
  if (!(longitude_deg > -180.0 && longitude_deg <= 180.0)) {
    throw RangeError("longitude " + std::to_string(longitude_deg) + " outside (-180, 180]");
  }
  const int zone = static_cast<int>(std::floor((longitude_deg + 180.0) / 6.0)) + 1;
  return std::clamp(zone, 1, 60);
}

/// Forward transverse Mercator projection (Krueger series, 6th order in the
/// third flattening; intrinsic error well below a centimeter inside a zone).
/// Scale factor 0.9996, false easting 500 km, false northing 10000 km in the
/// south. A forced zone must be within one zone of the natural one (1 and 60
/// count as neighbors).
inline UtmCoordinate to_utm(const GeoCoordinate& geo,
                            const EllipsoidParams& ellipsoid = EllipsoidParams::wgs84(),
                            std::optional<int> forced_zone = std::nullopt) {
  if (!(ellipsoid.semi_major_axis_m > 0.0) || !(ellipsoid.inverse_flattening > 0.0)) {
    throw RangeError("ellipsoid parameters must be positive");
  }
  if (std::abs(geo.latitude_deg) > 84.0) {
    throw DomainError("latitude " + std::to_string(geo.latitude_deg) +
                      " outside the transverse Mercator validity band [-84, 84]");
  }

  const int natural_zone = utm_zone_for(geo.longitude_deg);
  int zone = natural_zone;
  if (forced_zone) {
    if (*forced_zone < 1 || *forced_zone > 60) {
      throw ZoneError("forced zone " + std::to_string(*forced_zone) + " outside 1..60");
    }
    const int separation = std::abs(*forced_zone - natural_zone);
    if (separation > 1 && separation != 59) {
      throw ZoneError("forced zone " + std::to_string(*forced_zone) +
                      " is more than one zone away from the natural zone " +
                      std::to_string(natural_zone));
    }
    zone = *forced_zone;
  }

  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  constexpr double kScale = 0.9996;
  constexpr double kFalseEasting = 500000.0;
  constexpr double kFalseNorthingSouth = 10000000.0;

  const double f = 1.0 / ellipsoid.inverse_flattening;
  const double n = f / (2.0 - f);
  const double e = std::sqrt(f * (2.0 - f));

  const double central_meridian_deg = zone * 6.0 - 183.0;
  const double phi = geo.latitude_deg * kDegToRad;
  const double lambda = (geo.longitude_deg - central_meridian_deg) * kDegToRad;

  // Conformal latitude.
  const double tau = std::tan(phi);
  const double sigma = std::sinh(e * std::atanh(e * tau / std::hypot(1.0, tau)));
  const double tau_prime = tau * std::hypot(1.0, sigma) - sigma * std::hypot(1.0, tau);

  const double xi_prime = std::atan2(tau_prime, std::cos(lambda));
  const double eta_prime =
      std::asinh(std::sin(lambda) / std::hypot(tau_prime, std::cos(lambda)));

  const double n2 = n * n;
  const double n3 = n2 * n;
  const double n4 = n3 * n;
  const double n5 = n4 * n;
  const double n6 = n5 * n;
  const double alpha[6] = {
      n / 2.0 - 2.0 * n2 / 3.0 + 5.0 * n3 / 16.0 + 41.0 * n4 / 180.0 - 127.0 * n5 / 288.0 +
          7891.0 * n6 / 37800.0,
      13.0 * n2 / 48.0 - 3.0 * n3 / 5.0 + 557.0 * n4 / 1440.0 + 281.0 * n5 / 630.0 -
          1983433.0 * n6 / 1935360.0,
      61.0 * n3 / 240.0 - 103.0 * n4 / 140.0 + 15061.0 * n5 / 26880.0 +
          167603.0 * n6 / 181440.0,
      49561.0 * n4 / 161280.0 - 179.0 * n5 / 168.0 + 6601661.0 * n6 / 7257600.0,
      34729.0 * n5 / 80640.0 - 3418889.0 * n6 / 1995840.0,
      212378941.0 * n6 / 319334400.0,
  };
  // Rectifying radius.
  const double rect_radius =
      ellipsoid.semi_major_axis_m / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);

  double xi = xi_prime;
  double eta = eta_prime;
  for (int j = 1; j <= 6; ++j) {
    xi += alpha[j - 1] * std::sin(2.0 * j * xi_prime) * std::cosh(2.0 * j * eta_prime);
    eta += alpha[j - 1] * std::cos(2.0 * j * xi_prime) * std::sinh(2.0 * j * eta_prime);
  }

  UtmCoordinate utm;
  utm.zone = zone;
  utm.hemisphere = geo.latitude_deg < 0.0 ? UtmHemisphere::South : UtmHemisphere::North;
  utm.easting_m = kFalseEasting + kScale * rect_radius * eta;
  utm.northing_m = kScale * rect_radius * xi;
  if (utm.hemisphere == UtmHemisphere::South) {
    utm.northing_m += kFalseNorthingSouth;
  }

  if (utm.easting_m < 100000.0 || utm.easting_m > 900000.0) {
    throw RangeError("easting " + std::to_string(utm.easting_m) +
                     " outside the 100km..900km sanity band for zone " + std::to_string(zone));
  }
  if (utm.northing_m < 0.0 || utm.northing_m > 10000000.0) {
    throw RangeError("northing " + std::to_string(utm.northing_m) +
                     " outside the 0..10000km sanity band");
  }
  return utm;
}

/// Straight-line (chord) distance between two points of the same zone and
/// hemisphere. Cross-zone distances are out of scope and rejected.
inline double planar_distance(const UtmCoordinate& a, const UtmCoordinate& b) {
  if (a.zone != b.zone) {
    throw ZoneError("cannot take a planar distance across zones " + std::to_string(a.zone) +
                    " and " + std::to_string(b.zone));
  }
  if (a.hemisphere != b.hemisphere) {
    throw ZoneError("cannot take a planar distance across hemispheres");
  }
  return std::hypot(a.easting_m - b.easting_m, a.northing_m - b.northing_m);
}

}  // namespace netplan
