"""Orientation and in-circumball predicates with an exact slow path.

Each predicate evaluates the determinant in plain doubles and compares it
against a forward error bound; only when the result is smaller than the bound
(nearly degenerate input) does it re-evaluate with exact rational arithmetic.
Random inputs essentially never take the slow path.
"""

from __future__ import annotations

from fractions import Fraction

_EPS = 7.105427357601002e-15  # ~32 * 2^-52, loose uniform filter constant


def _exact_det3(m):
    (a, b, c), (d, e, f), (g, h, i) = [[Fraction(x) for x in row] for row in m]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return (det > 0) - (det < 0)


def _exact_det4(m):
    rows = [[Fraction(x) for x in row] for row in m]

    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = Fraction(0)
        for j, v in enumerate(mat[0]):
            if v:
                minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
                total += ((-1) ** j) * v * det(minor)
        return total

    d = det(rows)
    return (d > 0) - (d < 0)


def orient2d(ax, ay, bx, by, cx, cy):
    """Sign of the area of triangle abc: +1 counterclockwise, -1 clockwise."""
    l = (bx - ax) * (cy - ay)
    r = (by - ay) * (cx - ax)
    det = l - r
    bound = _EPS * (abs(l) + abs(r))
    if det > bound or -det > bound:
        return 1 if det > 0 else -1
    return _exact_det3(
        [[ax, ay, 1.0], [bx, by, 1.0], [cx, cy, 1.0]]
    )


def incircle(ax, ay, bx, by, cx, cy, dx, dy):
    """+1 if d lies inside the circumcircle of ccw triangle abc, -1 outside."""
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    ad2 = adx * adx + ady * ady
    bd2 = bdx * bdx + bdy * bdy
    cd2 = cdx * cdx + cdy * cdy
    det = (
        ad2 * (bdx * cdy - bdy * cdx)
        + bd2 * (cdx * ady - cdy * adx)
        + cd2 * (adx * bdy - ady * bdx)
    )
    perm = (
        ad2 * (abs(bdx * cdy) + abs(bdy * cdx))
        + bd2 * (abs(cdx * ady) + abs(cdy * adx))
        + cd2 * (abs(adx * bdy) + abs(ady * bdx))
    )
    bound = _EPS * perm
    if det > bound or -det > bound:
        return 1 if det > 0 else -1
    return _exact_incircle(ax, ay, bx, by, cx, cy, dx, dy)


def _exact_incircle(ax, ay, bx, by, cx, cy, dx, dy):
    A = [Fraction(ax) - Fraction(dx), Fraction(ay) - Fraction(dy)]
    B = [Fraction(bx) - Fraction(dx), Fraction(by) - Fraction(dy)]
    C = [Fraction(cx) - Fraction(dx), Fraction(cy) - Fraction(dy)]
    m = [
        [A[0], A[1], A[0] * A[0] + A[1] * A[1]],
        [B[0], B[1], B[0] * B[0] + B[1] * B[1]],
        [C[0], C[1], C[0] * C[0] + C[1] * C[1]],
    ]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return (det > 0) - (det < 0)


def orient3d(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz):
    """Sign of det[b-a; c-a; d-a]: +1 if d is on the positive side of abc."""
    bdx, bdy, bdz = bx - ax, by - ay, bz - az
    cdx, cdy, cdz = cx - ax, cy - ay, cz - az
    ddx, ddy, ddz = dx - ax, dy - ay, dz - az
    t1 = bdx * (cdy * ddz - cdz * ddy)
    t2 = bdy * (cdx * ddz - cdz * ddx)
    t3 = bdz * (cdx * ddy - cdy * ddx)
    det = t1 - t2 + t3
    perm = (
        abs(bdx) * (abs(cdy * ddz) + abs(cdz * ddy))
        + abs(bdy) * (abs(cdx * ddz) + abs(cdz * ddx))
        + abs(bdz) * (abs(cdx * ddy) + abs(cdy * ddx))
    )
    bound = _EPS * perm
    if det > bound or -det > bound:
        return 1 if det > 0 else -1
    return _exact_det3(
        [
            [Fraction(bx) - Fraction(ax), Fraction(by) - Fraction(ay), Fraction(bz) - Fraction(az)],
            [Fraction(cx) - Fraction(ax), Fraction(cy) - Fraction(ay), Fraction(cz) - Fraction(az)],
            [Fraction(dx) - Fraction(ax), Fraction(dy) - Fraction(ay), Fraction(dz) - Fraction(az)],
        ]
    )


def insphere(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz, ex, ey, ez):
    """+1 if e lies inside the circumsphere of positively oriented abcd."""
    aex, aey, aez = ax - ex, ay - ey, az - ez
    bex, bey, bez = bx - ex, by - ey, bz - ez
    cex, cey, cez = cx - ex, cy - ey, cz - ez
    dex, dey, dez = dx - ex, dy - ey, dz - ez

    ab = aex * bey - bex * aey
    bc = bex * cey - cex * bey
    cd = cex * dey - dex * cey
    da = dex * aey - aex * dey
    ac = aex * cey - cex * aey
    bd = bex * dey - dex * bey

    abc = aez * bc - bez * ac + cez * ab
    bcd = bez * cd - cez * bd + dez * bc
    cda = cez * da + dez * ac + aez * cd
    dab = dez * ab + aez * bd + bez * da

    alift = aex * aex + aey * aey + aez * aez
    blift = bex * bex + bey * bey + bez * bez
    clift = cex * cex + cey * cey + cez * cez
    dlift = dex * dex + dey * dey + dez * dez

    # negated so that +1 means inside for tets that are positive under
    # this module's orient3d convention
    det = -((dlift * abc - clift * dab) + (blift * cda - alift * bcd))

    aezplus, bezplus = abs(aez), abs(bez)
    cezplus, dezplus = abs(cez), abs(dez)
    abplus = abs(ab)
    bcplus = abs(bc)
    cdplus = abs(cd)
    daplus = abs(da)
    acplus = abs(ac)
    bdplus = abs(bd)
    perm = (
        dlift * (aezplus * bcplus + bezplus * acplus + cezplus * abplus)
        + clift * (dezplus * abplus + aezplus * bdplus + bezplus * daplus)
        + blift * (cezplus * daplus + dezplus * acplus + aezplus * cdplus)
        + alift * (bezplus * cdplus + cezplus * bdplus + dezplus * bcplus)
    )
    bound = 16 * _EPS * perm
    if det > bound or -det > bound:
        return 1 if det > 0 else -1
    return _exact_insphere(
        ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz, ex, ey, ez
    )


def _exact_insphere(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz, ex, ey, ez):
    rows = []
    for (px, py, pz) in ((ax, ay, az), (bx, by, bz), (cx, cy, cz), (dx, dy, dz)):
        x = Fraction(px) - Fraction(ex)
        y = Fraction(py) - Fraction(ey)
        z = Fraction(pz) - Fraction(ez)
        rows.append([x, y, z, x * x + y * y + z * z])
    return -_exact_det4(rows)
