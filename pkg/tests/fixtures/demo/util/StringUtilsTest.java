package util;

import org.junit.Assert;
import org.junit.Test;

public class StringUtilsTest {

    private static final String BLANK = "   ";

    @Test
    public void trimsWhitespace() {
        String cleaned = StringUtils.trim(BLANK + "core" + BLANK);
        Assert.assertEquals("core", cleaned);
    }

    @Test
    public void joinsParts() {
        String[] parts = {"a", "b", "c"};
        String joined = StringUtils.join(parts, "-");
        Assert.assertEquals("a-b-c", joined);
    }

    @Test
    public void splitEmpty() {
        String[] parts = StringUtils.split("", ",");
        Assert.assertEquals(0, parts.length);
    }

    private String pad(String s) {
        return BLANK + s + BLANK;
    }
}
