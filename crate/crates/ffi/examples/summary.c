#include <stdio.h>

#include "hellinger.h"

int main(void) {
    HlScenario *scn = NULL;
    if (hl_scenario_random_new(3, HL_ENSEMBLE_HILBERT_SCHMIDT, 4, HL_ENSEMBLE_BURES_HALL, 6, &scn) != HL_STATUS_OK) {
        fprintf(stderr, "%s\n", hl_last_error_message());
        return 1;
    }
    HlSummary s;
    if (hl_scenario_summary(scn, &s) != HL_STATUS_OK) {
        fprintf(stderr, "%s\n", hl_last_error_message());
        hl_scenario_free(scn);
        return 1;
    }
    printf("mean_dh %.17g var_dh %.17g shape %.17g rate %.17g\n", s.mean_dh, s.var_dh, s.gamma_shape, s.gamma_rate);

    double first, second;
    HlStatus st = hl_sqrt_trace_moments(HL_ENSEMBLE_HILBERT_SCHMIDT, 4, 2, &first, &second);
    printf("status %d: %s\n", (int)st, hl_last_error_message());

    hl_scenario_free(scn);
    return 0;
}
