class Student
{
    String name;
    int grade;
    Student(String n, int g)
    {
        name = n;
        grade = g;
    }
    boolean passed()
    {
        return grade >= 40;
    }
    String letter()
    {
        if (grade >= 70)
        {
            return "A";
        }
        else if (grade >= 60)
        {
            return "B";
        }
        return "C";
    }
}
