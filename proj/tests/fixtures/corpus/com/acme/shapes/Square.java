package com.acme.shapes;

public class Square extends Rect {
    public Square(double side) {
        super("square", side, side);
    }

    public double side() {
        return width;
    }
}
