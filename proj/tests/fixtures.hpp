#pragma once

#include <string>
#include <vector>

#include "staffcast/dataset.hpp"

namespace fixtures {

// Twelve hospitals: sickbeds (x) against medical staff employed (y).
inline const std::vector<double> kHospitalBeds = {23, 29, 29, 35, 42, 46, 50, 54, 64, 66, 76, 78};
inline const std::vector<double> kHospitalStaff = {69,  95,  102, 118, 126, 125,
                                                   138, 178, 156, 184, 176, 225};

inline staffcast::PairedSeries hospital() {
  return staffcast::PairedSeries::from_columns(kHospitalBeds, kHospitalStaff,
                                               staffcast::SeriesLabels{"beds", "staff"});
}

// Frozen from tests/oracle/hospital_oracle.py (exact rational arithmetic).
namespace hospital_oracle {
inline constexpr double kSlope = 2.2315039944425146;
inline constexpr double kIntercept = 30.912469607502604;
inline constexpr double kPredict100 = 254.06286905175409;
inline constexpr double kR = 0.94150625086755302;
inline constexpr double kSse = 2448.9367836054184;
inline constexpr double kSsr = 19115.063216394581;
inline constexpr double kSst = 21564.0;
inline constexpr double kRmse = 14.285589427827315;
inline constexpr double kMaxAbsDev = 26.586314692601597;
inline constexpr double kMinAbsDev = 0.6260854463355332;
inline constexpr double kMeanAbsDev = 11.524661340743314;
inline constexpr double kRaePct = 32.312134600214897;
}  // namespace hospital_oracle

inline std::string data_dir() { return STAFFCAST_DATA_DIR; }
inline std::string golden_dir() { return STAFFCAST_GOLDEN_DIR; }

}  // namespace fixtures
