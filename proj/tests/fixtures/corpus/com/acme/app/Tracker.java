package com.acme.app;

import com.acme.shapes.Shape;
import java.util.ArrayList;
import java.util.List;
import java.util.function.Predicate;

public class Tracker {
    private final List<Shape> seen = new ArrayList<>();
    private int large;

    public void track(Shape s) {
        seen.add(s);
        if (s.isLarge()) large++;
    }

    public long count(Predicate<Shape> filter) {
        return seen.stream().filter(filter).count();
    }

    public Runnable resetTask() {
        return () -> {
            seen.clear();
            large = 0;
        };
    }

    public int large() {
        return large;
    }
}
