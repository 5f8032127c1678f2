/* Exercises the C API from C: handles, status codes and error strings. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "orbconv/orbconv.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void test_space(void) {
  const int n = 3;
  orbconv_space* space = NULL;
  int dim = 0, rank = 0;
  double rho = 0.0;
  char* json = NULL;
  orbconv_space* back = NULL;
  EXPECT(orbconv_space_create("real-hyperbolic", &n, 1, &space) == ORBCONV_OK);
  EXPECT(orbconv_space_dim(space, &dim) == ORBCONV_OK && dim == 3);
  EXPECT(orbconv_space_rank(space, &rank) == ORBCONV_OK && rank == 1);
  EXPECT(orbconv_space_rho(space, &rho, 1) == ORBCONV_OK && rho == 1.0);
  EXPECT(orbconv_space_to_json(space, &json) == ORBCONV_OK);
  EXPECT(orbconv_space_from_json(json, &back) == ORBCONV_OK);
  EXPECT(orbconv_space_dim(back, &dim) == ORBCONV_OK && dim == 3);
  orbconv_free_string(json);
  orbconv_space_destroy(back);
  orbconv_space_destroy(space);
}

static void test_errors(void) {
  const int n = 1;
  orbconv_space* space = NULL;
  EXPECT(orbconv_space_create("real-hyperbolic", &n, 1, &space) == ORBCONV_INVALID_ARGUMENT);
  EXPECT(space == NULL);
  EXPECT(strlen(orbconv_last_error()) > 0);
  EXPECT(orbconv_space_create("lie-sphere", &n, 1, &space) != ORBCONV_OK);
  EXPECT(orbconv_space_dim(NULL, NULL) == ORBCONV_INVALID_ARGUMENT);
  EXPECT(strcmp(orbconv_status_name(ORBCONV_BELOW_THRESHOLD), "below_threshold") == 0);
}

/* H^3: phi_lambda(t) = sin(lambda t) / (lambda sinh t). */
static void test_spherical(void) {
  const int n = 3;
  orbconv_space* space = NULL;
  double re = 0.0, im = 0.0;
  orbconv_space_create("real-hyperbolic", &n, 1, &space);
  EXPECT(orbconv_spherical(space, 2.5, 1.2, NULL, &re, &im) == ORBCONV_OK);
  EXPECT(fabs(re - sin(3.0) / (2.5 * sinh(1.2))) < 1e-10);
  EXPECT(fabs(im) < 1e-12);
  orbconv_space_destroy(space);
}

static void test_convolution(void) {
  const int n = 2;
  const double two[] = {1.0, 1.5};
  const double three[] = {1.0, 1.0, 1.0};
  orbconv_space* space = NULL;
  orbconv_conv* conv = NULL;
  orbconv_spectral cfg;
  orbconv_l2_report rep;
  double value = 0.0;
  double samples[1000];
  size_t i;
  orbconv_space_create("real-hyperbolic", &n, 1, &space);

  EXPECT(orbconv_conv_create(space, two, 2, &conv) == ORBCONV_OK);
  orbconv_spectral_density_defaults(&cfg);
  EXPECT(orbconv_density_at(conv, 1.0, &cfg, &value) == ORBCONV_BELOW_THRESHOLD);
  EXPECT(orbconv_sample(conv, 1000, 5, 1, samples) == ORBCONV_OK);
  for (i = 0; i < 1000; ++i) EXPECT(samples[i] >= 0.5 - 1e-9 && samples[i] <= 2.5 + 1e-9);
  orbconv_conv_destroy(conv);

  EXPECT(orbconv_conv_create(space, three, 3, &conv) == ORBCONV_OK);
  orbconv_spectral_l2_defaults(&cfg);
  EXPECT(orbconv_l2_norm_sq(conv, &cfg, &rep) == ORBCONV_OK);
  EXPECT(rep.verdict == ORBCONV_VERDICT_FINITE && rep.has_value && rep.value > 0.0);
  orbconv_conv_destroy(conv);
  orbconv_space_destroy(space);
}

int main(void) {
  test_space();
  test_errors();
  test_spherical();
  test_convolution();
  EXPECT(orbconv_criterion_count() == 10);
  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("capi: ok\n");
  return 0;
}
