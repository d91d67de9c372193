package com.acme.app;

import com.acme.shapes.Canvas;
import com.acme.util.Strings;

/**
 * Renders a plain-text summary.
 */
public class Report {
    // header line
    private static final String HEADER = """
        == report ==
        """;

    /*
     * The canvas to describe.
     * Never null.
     */
    private final Canvas canvas;

    public Report(Canvas canvas) {
        this.canvas = canvas; // keep
    }

    public String render() {
        // title, padded
        String title = Strings.padLeft(canvas.getTitle(), 20, ' ');
        return HEADER + title + "\n" + canvas.totalArea();
    }
}
