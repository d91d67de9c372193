package com.acme.shapes;

/* A rectangle.
   Width and height must be positive. */
public class Rect extends AbstractShape {
    protected double width;
    protected double height;

    public Rect(double width, double height) {
        this("rect", width, height);
    }

    protected Rect(String name, double width, double height) {
        super(name);
        if (width <= 0 || height <= 0) {
            throw new IllegalArgumentException("size");
        }
        this.width = width;
        this.height = height;
    }

    @Override
    public double area() {
        return width * height;
    }

    public boolean isSquare() {
        return width == height;
    }
}
