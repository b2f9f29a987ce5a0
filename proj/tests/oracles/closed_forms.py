"""Closed-form oracle values frozen into the C++ tests."""
import mpmath as mp

mp.mp.dps = 40

# Cheeger constants: 2-D convex polygon, r solves |Omega_r| = pi r^2.
r_sq = mp.findroot(lambda r: (1 - 2*r)**2 - mp.pi*r**2, 0.27)
print("square cheeger r, h", r_sq, 1/r_sq, "closed", 2 + mp.sqrt(mp.pi))
r_rect = mp.findroot(lambda r: (2 - 2*r)*(1 - 2*r) - mp.pi*r**2, 0.34)
print("2x1 cheeger r, h   ", r_rect, 1/r_rect)

# Regular tetrahedron of side 1 via Cayley-Menger determinant.
cm = mp.matrix([[0, 1, 1, 1, 1], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1],
                [1, 1, 1, 0, 1], [1, 1, 1, 1, 0]])
print("tet volume", mp.sqrt(mp.det(cm) / 288), "sqrt2/12", mp.sqrt(2)/12)

# Equilateral triangle side 1: u = d1 d2 d3 / h_alt.
h = mp.sqrt(3)/2
print("tri sup", h**2/27, "tri dnu", h/4, "tri chat", (h/4)*3/(mp.sqrt(3)/4))

# Thin simplex apex height: distance from origin to side facet = 1 with base
# facet inradius rho = eta * r_{n-1}.
def apex(n, eta):
    rho = eta / mp.sqrt(2*(n-1)*n)
    return (rho**2 + 1)/(rho**2 - 1)
for n, eta in [(2, 20), (2, 1e4), (3, 50), (3, 1e4)]:
    print("apex", n, eta, apex(n, eta))

# Rectangle Poisson kernel on the unit square, source at (1/2, 0), heat-kernel
# mollified boundary data with std eps.  Exact interior and boundary integrals.
def poisson_square(eps):
    tau = eps**2/2
    vol = bdry = 0
    for k in range(1, 4001, 2):
        c = 2*mp.sin(k*mp.pi/2)*mp.e**(-k**2*mp.pi**2*tau)
        sx = 2/(k*mp.pi)
        vol += c*sx*(mp.cosh(k*mp.pi) - 1)/(k*mp.pi*mp.sinh(k*mp.pi))
        bdry += c*sx
    return vol, bdry, 4*vol/bdry
for eps in [0.2, 0.1, 0.05, 0.02, 0.01]:
    print("poisson square eps", eps, [mp.nstr(v, 15) for v in poisson_square(eps)])

# theorem 3 constant limit
for n in [1, 2, 50]:
    om = mp.pi**(mp.mpf(n)/2)/mp.gamma(mp.mpf(n)/2+1)
    print("omega^{1/n} sqrt n", n, om**(mp.mpf(1)/n)*mp.sqrt(n), mp.sqrt(2*mp.pi*mp.e))

# fiber bound triangle example
print("tri fiber rhs", (1 + mp.sqrt(2))/(4*mp.sqrt(2)))
