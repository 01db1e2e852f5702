#include <math.h>
#include <stdio.h>
#include "pairvis.h"

int main(void) {
    const double l[] = {0, 0, 2, 0, 2, 1, 1, 1, 1, 2, 0, 2};
    PvPolygon *poly = NULL;
    if (pv_polygon_new(l, 6, &poly) != PV_STATUS_OK) return 10;

    PvSolution sol;
    if (pv_solve(poly, 0.5, 1.75, 1.75, 0.25, PV_OBJECTIVE_MIN_MAX, 0, 0, &sol) != PV_STATUS_OK) return 11;
    if (fabs(sol.value - 0.15 / sqrt(2.44)) > 1e-9 || !sol.has_chord || sol.pivot_index != 1) return 12;

    if (pv_solve(poly, 1.5, 1.5, 0.5, 0.5, PV_OBJECTIVE_MIN_MAX, 0, 0, &sol) != PV_STATUS_OUTSIDE_POLYGON) return 13;
    if (pv_last_error_message() == NULL) return 14;

    PvQuery *q = NULL;
    if (pv_query_build(poly, &q) != PV_STATUS_OK) return 15;
    if (pv_query_minmax(q, 0.5, 1.75, 1.75, 0.25, &sol) != PV_STATUS_OK) return 16;
    if (fabs(sol.value - 0.15 / sqrt(2.44)) > 1e-9) return 17;
    pv_query_free(q);
    pv_polygon_free(poly);
    printf("ok %s\n", pv_version());
    return 0;
}
