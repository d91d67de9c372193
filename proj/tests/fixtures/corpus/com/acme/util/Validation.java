package com.acme.util;

public class Validation {
    private int attempts;
    private int failures;

    public boolean retry(int max) {
        int tries = 0;
        do {
            tries++;
            attempts++;
        } while (tries < max && !check());
        return tries < max;
    }

    private boolean check() {
        try {
            return Integer.parseInt("4" + attempts) % 2 == 0;
        } catch (NumberFormatException e) {
            failures++;
            return false;
        }
    }

    public double failureRate() {
        return attempts == 0 ? 0.0 : (double) failures / attempts;
    }
}
