#include <math.h>
#include <stdio.h>
#include <string.h>

#include "oscbridge.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    OscNormalModes modes;
    CHECK(osc_normal_modes(1.0, 5.0, -3.0, &modes) == OSC_STATUS_OK);
    CHECK(fabs(modes.omega - 2.0) < 1e-15);

    CHECK(osc_normal_modes(1.0, 1.0, 1.0, &modes) == OSC_STATUS_INVALID_ARGUMENT);
    CHECK(osc_last_error_message() != NULL);
    CHECK(strstr(osc_last_error_message(), "unstable") != NULL);

    double t = 0.0;
    CHECK(osc_effective_temperature(0.0, 1.0, &t, NULL) == OSC_STATUS_ZERO_TEMPERATURE);

    OscReducedState *state = NULL;
    CHECK(osc_reduced_state_new(1.0, 64, &state) == OSC_STATUS_OK);
    CHECK(osc_reduced_state_len(state) == 65);
    double eig[65];
    size_t written = 0;
    CHECK(osc_reduced_state_eigenvalues(state, eig, 65, &written) == OSC_STATUS_OK);
    CHECK(written == 65);
    double purity = 0.0;
    CHECK(osc_reduced_state_summary(state, &purity, NULL) == OSC_STATUS_OK);
    CHECK(fabs(purity - osc_purity(1.0)) < 1e-12);
    osc_reduced_state_free(state);

    OscDensityKernel *kernel = NULL;
    CHECK(osc_density_kernel_new(0.5, 201, 8.0, &kernel) == OSC_STATUS_OK);
    double trace = 0.0;
    CHECK(osc_density_kernel_trace(kernel, &trace) == OSC_STATUS_OK);
    CHECK(fabs(trace - 1.0) < 1e-7);
    osc_density_kernel_free(kernel);

    printf("ok\n");
    return 0;
}
