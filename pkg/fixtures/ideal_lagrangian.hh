ring x1 x2 xi1 xi2 cotangent;
ideal J = x1^2, x1*x2, x2^3;
bracket canonical;
check gabber;
