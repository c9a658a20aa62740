#include <math.h>
#include <stdio.h>

#include "angelesco/angelesco.h"

static int failures = 0;

#define EXPECT(cond)                                           \
  do {                                                         \
    if (!(cond)) {                                             \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                              \
    }                                                          \
  } while (0)

int main(void) {
  ang_config* cfg = NULL;
  ang_curve* curve = NULL;
  ang_point p;
  ang_plateau_info info;

  EXPECT(ang_config_create(&cfg) == ANG_OK);
  EXPECT(ang_config_set(cfg, "interval1", "-1,0") == ANG_OK);
  EXPECT(ang_plateau(cfg, &info) == ANG_OK);
  EXPECT(fabs(info.c1 - 0.5) < 1e-12);
  EXPECT(ang_curve_compute(cfg, ANG_METHOD_SURFACE, 3, &curve) == ANG_OK);
  EXPECT(ang_curve_size(curve) == 3);
  EXPECT(ang_curve_point(curve, 1, &p) == ANG_OK);
  EXPECT(fabs(p.A1 - p.A2) < 1e-12);
  EXPECT(fabs(p.B1 + p.B2) < 1e-12);
  ang_curve_destroy(curve);
  EXPECT(ang_config_set(cfg, "weight1", "gegenbauer") == ANG_INPUT_ERROR);
  EXPECT(ang_last_error()[0] != '\0');
  ang_config_destroy(cfg);

  if (failures) return 1;
  puts("C interface smoke test passed");
  return 0;
}
