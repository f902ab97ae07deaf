ring x1 x2 xi1 xi2 cotangent;
dmodule M = x1*d1, x2^2*d2;
check gabber;
