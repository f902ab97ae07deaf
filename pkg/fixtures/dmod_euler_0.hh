# Euler operator x d - lambda
ring x xi cotangent;
dmodule M = x*d1 - 0;
check gabber;
