# negative control: a point of T*A^1 is not involutive
ring x xi cotangent;
ideal J = x, xi;
bracket canonical;
check gabber;
