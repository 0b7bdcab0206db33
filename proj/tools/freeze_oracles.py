"""Reference values for the unit tests, computed with mpmath at 30 digits."""
import mpmath as mp

mp.mp.dps = 30


def c(z):
    z = mp.mpc(z)
    return "{%s, %s}" % (mp.nstr(z.real, 17), mp.nstr(z.imag, 17))


def r(x):
    return mp.nstr(mp.mpf(x), 17)


print("// zeta")
for s in [mp.mpc(3, 4), mp.mpc(0.3, 20), mp.mpc(-1.5, 7), mp.mpc(2, 50), mp.mpc(0.5, 100), mp.mpc(-3, 0.5)]:
    print("{%s, %s}," % (c(s), c(mp.zeta(s))))
print("// hardy z")
for t in [0, 50, 1000, 5000, 20000]:
    print("{%s, %s}," % (r(t), r(mp.siegelz(t))))
print("// theta")
for t in [10, 100, 1000]:
    print("{%s, %s}," % (r(t), r(mp.siegeltheta(t))))
print("// loggamma")
for s in [mp.mpc(10, 20), mp.mpc(0.3, -2), mp.mpc(-2.5, 1)]:
    print("{%s, %s}," % (c(s), c(mp.loggamma(s))))
print("// rgamma")
for s in [mp.mpc(-2.5, 1), mp.mpc(3, 4), mp.mpc(0.1, 0.1), mp.mpc(-7.3, -0.4)]:
    print("{%s, %s}," % (c(s), c(mp.rgamma(s))))
print("// bessel")
for p, s in [(0, 1), (1, 15), (2, mp.mpc(3, 4)), (-1, mp.mpc(2, 1)), (0, mp.mpc(25, 3)), (3, mp.mpc(-10, 8)), (1, mp.mpc(0, 11))]:
    print("{%d, %s, %s}," % (p, c(s), c(mp.besselj(p, s))))
print("// elliptic sn cn dn")
for k, s in [(0.8, mp.mpc(0.7, 0.4)), (0.3, mp.mpc(3, 2)), (0.5, mp.mpc(-1.2, 0.9)), (0.8, mp.mpc(5.5, -3.1))]:
    m = k * k
    vals = [mp.ellipfun(f, s, m=m) for f in ("sn", "cn", "dn")]
    print("{%s, %s, %s, %s, %s}," % (r(k), c(s), c(vals[0]), c(vals[1]), c(vals[2])))
print("// K")
for k in [0.3, 0.8]:
    print("{%s, %s}," % (r(k), r(mp.ellipk(k * k))))
print("// V(t)")
for t in [50, 100]:
    pts = [mp.mpf(i) for i in range(0, t + 1)]
    v = mp.quad(lambda u: mp.siegelz(u) ** 2, pts)
    print("{%s, %s}," % (r(t), r(v)))
print("// first zero", r(mp.zetazero(1).imag))
