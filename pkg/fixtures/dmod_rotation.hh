# rotation field and Euler field on the plane
ring x1 x2 xi1 xi2 cotangent;
dmodule M = x1*d2 - x2*d1, x1*d1 + x2*d2;
check gabber;
radical user = x1^2*xi2 + x2^2*xi2, x1*xi1 + x2*xi2, x2*xi1 - x1*xi2;
