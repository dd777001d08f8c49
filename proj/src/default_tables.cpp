#include "orbnet/link_budget.hpp"

// Copies of data/atmospheric.csv and data/scintillation.csv so the library
// works without its data directory. A unit test keeps them in sync.

namespace orbnet {

namespace {

constexpr const char* kAtmosphericCsv = R"csv(# Gaseous absorption (oxygen + water vapour), slant path, dB.
# Zenith attenuation scaled by the cosecant of elevation (5 deg floor).
elevation_deg,frequency_GHz,loss_dB
0,10,0.574
10,10,0.288
20,10,0.146
30,10,0.100
40,10,0.078
50,10,0.065
60,10,0.058
70,10,0.053
80,10,0.051
90,10,0.050
0,20,4.589
10,20,2.304
20,20,1.170
30,20,0.800
40,20,0.622
50,20,0.522
60,20,0.462
70,20,0.426
80,20,0.406
90,20,0.400
0,30,2.868
10,30,1.440
20,30,0.731
30,30,0.500
40,30,0.389
50,30,0.326
60,30,0.289
70,30,0.266
80,30,0.254
90,30,0.250
0,40,4.016
10,40,2.016
20,40,1.023
30,40,0.700
40,40,0.545
50,40,0.457
60,40,0.404
70,40,0.372
80,40,0.355
90,40,0.350
)csv";

constexpr const char* kScintillationCsv = R"csv(# Tropospheric scintillation fade depth, dB.
# 20 GHz column scaled to other bands by f^(7/12).
elevation_deg,frequency_GHz,loss_dB
0,10,1.335
10,10,0.721
20,10,0.320
30,10,0.200
40,10,0.147
50,10,0.113
60,10,0.087
70,10,0.080
80,10,0.073
90,10,0.067
0,20,2.000
10,20,1.080
20,20,0.480
30,20,0.300
40,20,0.220
50,20,0.170
60,20,0.130
70,20,0.120
80,20,0.110
90,20,0.100
0,30,2.534
10,30,1.368
20,30,0.608
30,30,0.380
40,30,0.279
50,30,0.215
60,30,0.165
70,30,0.152
80,30,0.139
90,30,0.127
0,40,2.997
10,40,1.618
20,40,0.719
30,40,0.449
40,40,0.330
50,40,0.255
60,40,0.195
70,40,0.180
80,40,0.165
90,40,0.150
)csv";

}  // namespace

const LossTable& default_atmospheric_table() {
  static const LossTable table = LossTable::parse(kAtmosphericCsv);
  return table;
}

const LossTable& default_scintillation_table() {
  static const LossTable table = LossTable::parse(kScintillationCsv);
  return table;
}

}  // namespace orbnet
