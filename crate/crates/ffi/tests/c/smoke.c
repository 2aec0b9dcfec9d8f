#include <math.h>
#include <stdio.h>
#include "relspin.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);        \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    const double q[3] = {0.4, -0.2, 0.9};
    const double xi[3] = {0.0, 0.6, 0.0};
    RelspinOmega *om = NULL;
    CHECK(relspin_omega_sharp(1.0, q, xi, &om) == RELSPIN_STATUS_OK);

    double avg[3];
    CHECK(relspin_omega_sigma_average(om, avg) == RELSPIN_STATUS_OK);
    CHECK(fabs(avg[1] - 0.3) < 1e-12);

    const double axis[3] = {1.0, 0.0, 0.0};
    RelspinOmega *moved = NULL;
    CHECK(relspin_omega_boost(om, axis, 1.0, &moved) == RELSPIN_STATUS_OK);
    double s0, s1;
    CHECK(relspin_omega_entropy(om, &s0) == RELSPIN_STATUS_OK);
    CHECK(relspin_omega_entropy(moved, &s1) == RELSPIN_STATUS_OK);
    CHECK(fabs(s0 - s1) < 1e-10);
    relspin_omega_free(moved);
    relspin_omega_free(om);

    const double bad[3] = {0.0, 0.0, 2.0};
    CHECK(relspin_omega_sharp(1.0, q, bad, &om) == RELSPIN_STATUS_INVALID_ARGUMENT);
    CHECK(relspin_last_error() != NULL);

    const double k[3] = {0.75, 0.0, 0.0}, p[3] = {0.0, 0.75, 0.0};
    const double a[3] = {1.0, 0.0, 0.0}, b[3] = {0.0, 1.0, 0.0};
    double trace, closed, special;
    CHECK(relspin_correlation_singlet(1.0, k, p, a, b, &trace, &closed) == RELSPIN_STATUS_OK);
    CHECK(relspin_special_config_correlation(0.6, &special) == RELSPIN_STATUS_OK);
    CHECK(fabs(trace - special) < 1e-12 && fabs(closed - special) < 1e-12);

    RelspinField field = {{0, 0, 0}, {0, 0, 1}, {0}};
    RelspinParticle particle = {1.0, 1.0, 1.0, {0.3, 0, 0}, {0, 0, 1}};
    RelspinTrajectory *traj = NULL;
    CHECK(relspin_bmt_integrate(&field, &particle, 1e-3, 100, &traj) == RELSPIN_STATUS_OK);
    CHECK(relspin_trajectory_len(traj) == 101);
    RelspinTrajectoryRow row;
    CHECK(relspin_trajectory_row(traj, 100, &row) == RELSPIN_STATUS_OK);
    CHECK(fabs(row.tau - 0.1) < 1e-12);
    CHECK(relspin_trajectory_row(traj, 101, &row) == RELSPIN_STATUS_INVALID_ARGUMENT);
    relspin_trajectory_free(traj);

    puts("ok");
    return 0;
}
