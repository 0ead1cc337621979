#pragma once

#include <string>
#include <vector>

#include "famv/stats.hpp"

namespace famv::test {

// Reference values from tests/oracles/stats_oracle.py
// (scipy.stats.kruskal, scikit_posthocs.posthoc_dunn, statsmodels Holm).
struct PairRef {
  std::size_t i, j;
  double z, raw, holm;
};

struct DatasetRef {
  stats::SampleSet samples;
  double h, p;
  std::vector<PairRef> pairs;
};

inline stats::SampleSet groups(std::initializer_list<std::vector<double>> gs) {
  stats::SampleSet out;
  int k = 0;
  for (const auto& g : gs) out.push_back({"g" + std::to_string(k++), g});
  return out;
}

inline std::vector<DatasetRef> references() {
  return {
      {groups({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}),
       7.200000000000003,
       0.02732372244729252,
       {{0, 1, -1.3416407864998738, 0.17971249487899976, 0.3594249897579995},
        {0, 2, -2.6832815729997477, 0.007290358091535638, 0.021871074274606914},
        {1, 2, -1.3416407864998738, 0.17971249487899976, 0.3594249897579995}}},
      {groups({{1, 2, 2, 3, 5}, {2, 3, 3, 4}, {5, 5, 6, 7, 7, 8}}),
       9.762461913467401,
       0.007587668185348125,
       {{0, 1, -0.3878617351245637, 0.6981183566260379, 0.6981183566260379},
        {0, 2, -2.889457875838108, 0.0038590670692890162, 0.011577201207867049},
        {1, 2, -2.3074740127068587, 0.02102840934752782, 0.04205681869505564}}},
      {groups({{0.5, 1.25, 3.0, 2.0, 0.75}, {2.5, 4.0, 3.5, 6.0}}),
       4.859999999999999,
       0.027486336111510433,
       {{0, 1, -2.20454076850486, 0.027486336111510367, 0.027486336111510367}}},
      {groups({{10.1, 12.3, 11.7, 9.8},
               {14.2, 13.9, 15.5, 16.0, 12.8},
               {9.0, 8.7, 10.4},
               {11.1, 11.9, 13.3, 12.0, 10.9, 14.1}}),
       12.338011695906431,
       0.006310575728330817,
       {{0, 1, -2.4851998558640602, 0.01294787209709768, 0.0647393604854884},
        {0, 2, 0.940146987210281, 0.3471421698857675, 0.619576213345612},
        {0, 3, -1.0156667501540164, 0.309788106672806, 0.619576213345612},
        {1, 2, 3.2660310874710743, 0.0010906627521559428, 0.0065439765129356574},
        {1, 3, 1.6704582072023142, 0.09482874155938893, 0.2844862246781668},
        {2, 3, -1.942647457028731, 0.05205876875060015, 0.2082350750024006}}},
      {groups({{3, 1, 4, 1, 5, 9, 2, 6}, {5, 3, 5, 8, 9, 7, 9, 3}, {2, 3, 8, 4, 6, 2, 6, 4}}),
       3.286981922398597,
       0.19330404611454696,
       {{0, 1, -1.7445904043678406, 0.08105619232490063, 0.2431685769747019},
        {0, 2, -0.4450485725428165, 0.6562846526292547, 0.6562846526292547},
        {1, 2, 1.2995418318250243, 0.1937580472105186, 0.3875160944210372}}},
  };
}

}  // namespace famv::test
